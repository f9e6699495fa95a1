#include "steerkit/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace steerkit {
namespace io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    fail(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) {
    fail(std::string("field \"") + name + "\" must be an integer");
  }
  return v.get<int>();
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) fail(what + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(what + " must be finite");
  return x;
}

// "x:a" or "x:a:y" with 1-based decimal indices.
std::vector<int> parse_key(const std::string& key, std::size_t parts) {
  std::vector<int> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = key.find(':', start);
    const std::string piece =
        key.substr(start, colon == std::string::npos ? colon : colon - start);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (ec != std::errc() || ptr != piece.data() + piece.size()) {
      fail("malformed index key \"" + key + "\"");
    }
    out.push_back(value);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (out.size() != parts) fail("malformed index key \"" + key + "\"");
  return out;
}

json real_part_rows(const Matrix& m, bool imaginary) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(imaginary ? m(i, j).imag() : m(i, j).real());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void read_part(const json& part, Matrix& m, bool imaginary, int dim,
               const char* name) {
  if (!part.is_array() || static_cast<int>(part.size()) != dim) {
    fail(std::string("matrix field \"") + name + "\" must hold " +
         std::to_string(dim) + " rows");
  }
  for (int i = 0; i < dim; ++i) {
    const json& row = part.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      fail(std::string("matrix field \"") + name + "\" row " +
           std::to_string(i) + " must hold " + std::to_string(dim) + " entries");
    }
    for (int j = 0; j < dim; ++j) {
      const double v = number(row.at(static_cast<std::size_t>(j)),
                              std::string(name) + " entry");
      if (imaginary) {
        m(i, j) += Complex(0, v);
      } else {
        m(i, j) += Complex(v, 0);
      }
    }
  }
}

std::string norm_name(WitnessNormalization n) {
  switch (n) {
    case WitnessNormalization::SRdual: return "SRdual";
    case WitnessNormalization::SWdual: return "SWdual";
    case WitnessNormalization::Shifted: return "Shifted";
  }
  fail("unknown witness normalization");
}

WitnessNormalization norm_from_name(const std::string& s) {
  if (s == "SRdual") return WitnessNormalization::SRdual;
  if (s == "SWdual") return WitnessNormalization::SWdual;
  if (s == "Shifted") return WitnessNormalization::Shifted;
  fail("unknown witness normalization \"" + s + "\"");
}

// Shared body of assemblage/witness readers: the "sigma" map of matrices.
std::vector<HermitianMatrix> read_sigma(const json& j, int n_settings,
                                        int n_outcomes, int dim) {
  const json& sigma = field(j, "sigma");
  if (!sigma.is_object()) fail("field \"sigma\" must be an object");
  const std::size_t expected =
      static_cast<std::size_t>(n_settings) * static_cast<std::size_t>(n_outcomes);
  if (sigma.size() != expected) {
    fail("\"sigma\" holds " + std::to_string(sigma.size()) +
         " entries, expected " + std::to_string(expected));
  }
  std::vector<HermitianMatrix> elements;
  elements.reserve(expected);
  for (int x = 1; x <= n_settings; ++x) {
    for (int a = 1; a <= n_outcomes; ++a) {
      const std::string key = std::to_string(x) + ":" + std::to_string(a);
      if (!sigma.contains(key)) fail("\"sigma\" is missing key \"" + key + "\"");
      const Matrix m = matrix_from_json(sigma.at(key));
      if (m.rows() != dim) {
        fail("\"sigma\" entry \"" + key + "\" has dim " +
             std::to_string(m.rows()) + ", expected " + std::to_string(dim));
      }
      elements.emplace_back(m);
    }
  }
  return elements;
}

json sigma_map(const std::vector<HermitianMatrix>& elements, int n_settings,
               int n_outcomes) {
  json sigma = json::object();
  std::size_t k = 0;
  for (int x = 1; x <= n_settings; ++x) {
    for (int a = 1; a <= n_outcomes; ++a) {
      sigma[std::to_string(x) + ":" + std::to_string(a)] =
          matrix_to_json(elements[k++].mat());
    }
  }
  return sigma;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json j;
  j["dim"] = static_cast<int>(m.rows());
  j["re"] = real_part_rows(m, false);
  j["im"] = real_part_rows(m, true);
  return j;
}

Matrix matrix_from_json(const json& j) {
  const int dim = int_field(j, "dim");
  if (dim < 1) fail("matrix \"dim\" must be positive");
  Matrix m = Matrix::Zero(dim, dim);
  read_part(field(j, "re"), m, false, dim, "re");
  read_part(field(j, "im"), m, true, dim, "im");
  return m;
}

json assemblage_to_json(const Assemblage& a) {
  json j;
  j["nSettings"] = a.n_settings();
  j["nOutcomes"] = a.n_outcomes();
  j["dim"] = a.dim();
  j["sigma"] = sigma_map(a.elements(), a.n_settings(), a.n_outcomes());
  return j;
}

Assemblage assemblage_from_json(const json& j) {
  const int n_settings = int_field(j, "nSettings");
  const int n_outcomes = int_field(j, "nOutcomes");
  const int dim = int_field(j, "dim");
  if (n_settings < 1 || n_outcomes < 1 || dim < 1) {
    fail("nSettings, nOutcomes, dim must be positive");
  }
  return Assemblage(n_settings, n_outcomes, dim,
                    read_sigma(j, n_settings, n_outcomes, dim));
}

json witness_to_json(const WitnessSet& f) {
  json j;
  j["nSettings"] = f.n_settings();
  j["nOutcomes"] = f.n_outcomes();
  j["dim"] = f.dim();
  j["normalization"] = norm_name(f.normalization());
  j["sigma"] = sigma_map(f.elements(), f.n_settings(), f.n_outcomes());
  return j;
}

WitnessSet witness_from_json(const json& j) {
  const int n_settings = int_field(j, "nSettings");
  const int n_outcomes = int_field(j, "nOutcomes");
  const int dim = int_field(j, "dim");
  if (n_settings < 1 || n_outcomes < 1 || dim < 1) {
    fail("nSettings, nOutcomes, dim must be positive");
  }
  const json& tag = field(j, "normalization");
  if (!tag.is_string()) fail("field \"normalization\" must be a string");
  return WitnessSet(n_settings, n_outcomes, dim,
                    read_sigma(j, n_settings, n_outcomes, dim),
                    norm_from_name(tag.get<std::string>()));
}

json table_to_json(const CorrelationTable& p) {
  json j;
  j["nSettings"] = p.n_settings();
  j["nOutcomes"] = p.n_outcomes();
  j["tomoSize"] = p.tomo_size();
  json map = json::object();
  for (int x = 1; x <= p.n_settings(); ++x) {
    for (int a = 1; a <= p.n_outcomes(); ++a) {
      for (int y = 1; y <= p.tomo_size(); ++y) {
        map[std::to_string(x) + ":" + std::to_string(a) + ":" +
            std::to_string(y)] = p.at(x, a, y);
      }
    }
  }
  j["p"] = std::move(map);
  return j;
}

CorrelationTable table_from_json(const json& j) {
  const int n_settings = int_field(j, "nSettings");
  const int n_outcomes = int_field(j, "nOutcomes");
  const int tomo_size = int_field(j, "tomoSize");
  if (n_settings < 1 || n_outcomes < 1 || tomo_size < 1) {
    fail("nSettings, nOutcomes, tomoSize must be positive");
  }
  const json& map = field(j, "p");
  if (!map.is_object()) fail("field \"p\" must be an object");
  const std::size_t expected = static_cast<std::size_t>(n_settings) *
                               n_outcomes * static_cast<std::size_t>(tomo_size);
  if (map.size() != expected) {
    fail("\"p\" holds " + std::to_string(map.size()) + " entries, expected " +
         std::to_string(expected));
  }
  std::vector<double> p(expected, 0.0);
  for (const auto& [key, value] : map.items()) {
    const std::vector<int> idx = parse_key(key, 3);
    if (idx[0] < 1 || idx[0] > n_settings || idx[1] < 1 || idx[1] > n_outcomes ||
        idx[2] < 1 || idx[2] > tomo_size) {
      fail("\"p\" key \"" + key + "\" out of range");
    }
    p[(static_cast<std::size_t>(idx[0] - 1) * n_outcomes + (idx[1] - 1)) *
          static_cast<std::size_t>(tomo_size) +
      static_cast<std::size_t>(idx[2] - 1)] = number(value, "\"p\" entry " + key);
  }
  return CorrelationTable(n_settings, n_outcomes, tomo_size, std::move(p));
}

json game_to_json(const BetaGame& g) {
  json j;
  j["nSettings"] = g.n_settings();
  j["nOutcomes"] = g.n_outcomes();
  json tomo = json::array();
  for (const DensityMatrix& w : g.tomo().states()) {
    tomo.push_back(matrix_to_json(w.mat()));
  }
  j["tomo"] = std::move(tomo);
  json map = json::object();
  for (int x = 1; x <= g.n_settings(); ++x) {
    for (int a = 1; a <= g.n_outcomes(); ++a) {
      for (int y = 1; y <= g.tomo_size(); ++y) {
        const double b = g.beta(x, a, y);
        if (b != 0.0) {
          map[std::to_string(x) + ":" + std::to_string(a) + ":" +
              std::to_string(y)] = b;
        }
      }
    }
  }
  j["beta"] = std::move(map);
  return j;
}

BetaGame game_from_json(const json& j) {
  const json& tomo_json = field(j, "tomo");
  if (!tomo_json.is_array() || tomo_json.empty()) {
    fail("field \"tomo\" must be a nonempty array of matrices");
  }
  std::vector<DensityMatrix> states;
  states.reserve(tomo_json.size());
  for (const json& m : tomo_json) states.emplace_back(matrix_from_json(m));
  const int dim = states.front().dim();
  TomoSet tomo(dim, std::move(states));

  const json& map = field(j, "beta");
  if (!map.is_object()) fail("field \"beta\" must be an object");
  std::vector<std::pair<std::vector<int>, double>> entries;
  int max_x = 0, max_a = 0;
  for (const auto& [key, value] : map.items()) {
    std::vector<int> idx = parse_key(key, 3);
    if (idx[0] < 1 || idx[1] < 1 || idx[2] < 1 || idx[2] > tomo.size()) {
      fail("\"beta\" key \"" + key + "\" out of range");
    }
    max_x = std::max(max_x, idx[0]);
    max_a = std::max(max_a, idx[1]);
    entries.emplace_back(std::move(idx), number(value, "\"beta\" entry " + key));
  }
  const int n_settings =
      j.contains("nSettings") ? int_field(j, "nSettings") : max_x;
  const int n_outcomes =
      j.contains("nOutcomes") ? int_field(j, "nOutcomes") : max_a;
  if (n_settings < 1 || n_outcomes < 1) {
    fail("game needs at least one setting and outcome (empty beta map needs "
         "explicit nSettings/nOutcomes)");
  }
  if (max_x > n_settings || max_a > n_outcomes) {
    fail("\"beta\" keys exceed the declared nSettings/nOutcomes");
  }
  std::vector<double> beta(static_cast<std::size_t>(n_settings) * n_outcomes *
                               static_cast<std::size_t>(tomo.size()),
                           0.0);
  for (const auto& [idx, value] : entries) {
    beta[(static_cast<std::size_t>(idx[0] - 1) * n_outcomes + (idx[1] - 1)) *
             static_cast<std::size_t>(tomo.size()) +
         static_cast<std::size_t>(idx[2] - 1)] = value;
  }
  return BetaGame(std::move(tomo), n_settings, n_outcomes, std::move(beta));
}

json lhs_model_to_json(const LhsModel& m) {
  json j;
  j["nSettings"] = m.n_settings();
  j["nOutcomes"] = m.n_outcomes();
  j["dim"] = m.dim();
  json states = json::object();
  for (std::size_t code = 0; code < m.states().size(); ++code) {
    states[std::to_string(code)] = matrix_to_json(m.states()[code].mat());
  }
  j["states"] = std::move(states);
  return j;
}

LhsModel lhs_model_from_json(const json& j) {
  const int n_settings = int_field(j, "nSettings");
  const int n_outcomes = int_field(j, "nOutcomes");
  const int dim = int_field(j, "dim");
  if (n_settings < 1 || n_outcomes < 1 || dim < 1) {
    fail("nSettings, nOutcomes, dim must be positive");
  }
  const json& map = field(j, "states");
  if (!map.is_object()) fail("field \"states\" must be an object");
  std::vector<HermitianMatrix> states(
      map.size(), HermitianMatrix::zero(dim));
  for (const auto& [key, value] : map.items()) {
    const int code = parse_key(key, 1)[0];
    if (code < 0 || code >= static_cast<int>(map.size())) {
      fail("\"states\" key \"" + key + "\" out of range");
    }
    const Matrix m = matrix_from_json(value);
    if (m.rows() != dim) {
      fail("\"states\" entry \"" + key + "\" has dim " +
           std::to_string(m.rows()) + ", expected " + std::to_string(dim));
    }
    states[static_cast<std::size_t>(code)] = HermitianMatrix(m);
  }
  return LhsModel(n_settings, n_outcomes, dim, std::move(states));
}

json sdp_problem_to_json(const SdpProblem& p) {
  json j;
  j["sense"] = p.sense() == SdpSense::Minimize ? "minimize" : "maximize";
  json blocks = json::array();
  for (int i = 0; i < p.n_blocks(); ++i) {
    blocks.push_back({{"id", p.block_id(i)}, {"dim", p.block_dim(i)}});
  }
  j["blocks"] = std::move(blocks);
  json objective = json::array();
  for (const auto& [block, coeff] : p.objective()) {
    objective.push_back(
        {{"block", p.block_id(block)}, {"coeff", matrix_to_json(coeff.mat())}});
  }
  j["objective"] = std::move(objective);
  json constraints = json::array();
  for (const SdpConstraint& c : p.constraints()) {
    json terms = json::array();
    for (const SdpTerm& t : c.terms) {
      terms.push_back({{"block", p.block_id(t.block)},
                       {"coeff", matrix_to_json(t.coeff.mat())}});
    }
    constraints.push_back({{"terms", std::move(terms)}, {"rhs", c.rhs}});
  }
  j["constraints"] = std::move(constraints);
  return j;
}

std::string format_number(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "v,s_mdi,steering_robustness,abs_diff\n";
  for (const SweepRow& r : rows) {
    os << format_number(r.v) << ',' << format_number(r.s_mdi) << ','
       << format_number(r.robustness) << ',' << format_number(r.abs_diff)
       << '\n';
  }
  return os.str();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open file \"" + path + "\"");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail("file \"" + path + "\" is not valid JSON: " + e.what());
  }
}

void save_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail("cannot open file \"" + path + "\" for writing");
  out << content;
  if (!out) fail("failed writing file \"" + path + "\"");
}

}  // namespace io
}  // namespace steerkit
