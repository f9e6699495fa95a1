#include "steerkit/cli.hpp"

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "steerkit/io.hpp"

namespace steerkit {

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    io::save_text_file(out_path, text);
  }
}

std::string scalar_line(const char* key, double value) {
  return std::string("{\"") + key + "\": " + io::format_number(value) + "}\n";
}

TomoSet tomo_by_name(const std::string& name) {
  if (name == "minimal4") return qudit_tomo_set(2);
  return pauli_tomo_set();
}

SdpOptions options_with_tol(double tol) {
  SdpOptions opts;
  opts.gap_tol = std::max(tol, tol::sdp_gap_floor);
  return opts;
}

std::vector<double> linear_grid(double from, double to, int steps) {
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    grid[static_cast<std::size_t>(i)] =
        steps == 1 ? from : from + (to - from) * i / (steps - 1);
  }
  return grid;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"quantum steering measures: assemblages, witnesses, and "
               "measurement-device-independent certification"};
  app.require_subcommand(1);

  std::string assemblage_path, witness_path, table_path, game_path, out_path;
  std::string tomo_name = "pauli6";
  double tol = tol::sdp_gap;
  double sweep_from = 0, sweep_to = 1, eta = 1;
  int sweep_steps = 101;

  auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol,
                    "SDP relative duality-gap tolerance (floor 1e-10)")
        ->check(CLI::PositiveNumber);
  };
  auto add_tomo = [&](CLI::App* cmd) {
    cmd->add_option("--tomo", tomo_name, "tomography set")
        ->check(CLI::IsMember({"pauli6", "minimal4"}));
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "write the result to this file");
  };

  CLI::App* validate =
      app.add_subcommand("validate", "check a JSON input file's invariants");
  validate->add_option("--assemblage", assemblage_path, "assemblage JSON");
  validate->add_option("--witness", witness_path, "witness JSON");
  validate->add_option("--table", table_path, "correlation table JSON");
  validate->add_option("--game", game_path, "beta game JSON");

  CLI::App* robustness = app.add_subcommand(
      "robustness", "steering robustness of an assemblage");
  robustness->add_option("--assemblage", assemblage_path, "assemblage JSON")
      ->required();
  add_tol(robustness);

  CLI::App* weight =
      app.add_subcommand("weight", "steerable weight of an assemblage");
  weight->add_option("--assemblage", assemblage_path, "assemblage JSON")
      ->required();
  add_tol(weight);

  CLI::App* witness = app.add_subcommand(
      "witness", "optimal robustness witness of an assemblage");
  witness->add_option("--assemblage", assemblage_path, "assemblage JSON")
      ->required();
  add_tol(witness);
  add_out(witness);

  CLI::App* beta = app.add_subcommand(
      "beta", "expand a witness into game coefficients over a tomography set");
  beta->add_option("--witness", witness_path, "witness JSON")->required();
  add_tomo(beta);
  add_out(beta);

  CLI::App* correlations_cmd = app.add_subcommand(
      "correlations",
      "simulate the click table under the maximally entangled measurement");
  correlations_cmd->add_option("--assemblage", assemblage_path, "assemblage JSON")
      ->required();
  correlations_cmd
      ->add_option("--eta", eta, "uniform detection efficiency in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  add_tomo(correlations_cmd);
  add_out(correlations_cmd);

  CLI::App* mdi_ratio_cmd = app.add_subcommand(
      "mdi-ratio", "payoff ratio from a data table and a game alone");
  mdi_ratio_cmd->add_option("--table", table_path, "correlation table JSON")
      ->required();
  mdi_ratio_cmd->add_option("--game", game_path, "beta game JSON")->required();

  CLI::App* mdi_measure_cmd = app.add_subcommand(
      "mdi-measure", "measurement-device-independent steering measure");
  mdi_measure_cmd->add_option("--assemblage", assemblage_path, "assemblage JSON")
      ->required();
  add_tomo(mdi_measure_cmd);
  add_tol(mdi_measure_cmd);

  CLI::App* sweep = app.add_subcommand(
      "werner-sweep", "visibility sweep over the Werner family, CSV output");
  sweep->add_option("--from", sweep_from, "first visibility")->required();
  sweep->add_option("--to", sweep_to, "last visibility")->required();
  sweep->add_option("--steps", sweep_steps, "number of grid points")
      ->required()
      ->check(CLI::PositiveNumber);
  add_tomo(sweep);
  add_out(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (app.got_subcommand(validate)) {
      int checked = 0;
      if (!assemblage_path.empty()) {
        io::assemblage_from_json(io::load_json_file(assemblage_path));
        ++checked;
      }
      if (!witness_path.empty()) {
        io::witness_from_json(io::load_json_file(witness_path));
        ++checked;
      }
      if (!table_path.empty()) {
        io::table_from_json(io::load_json_file(table_path));
        ++checked;
      }
      if (!game_path.empty()) {
        io::game_from_json(io::load_json_file(game_path));
        ++checked;
      }
      if (checked == 0) {
        std::cerr << "validate needs at least one of --assemblage, --witness, "
                     "--table, --game\n";
        return 64;
      }
      std::cout << "{\"valid\": true}\n";
    } else if (app.got_subcommand(robustness)) {
      const Assemblage a =
          io::assemblage_from_json(io::load_json_file(assemblage_path));
      std::cout << scalar_line(
          "sr", steering_robustness(a, options_with_tol(tol)).value);
    } else if (app.got_subcommand(weight)) {
      const Assemblage a =
          io::assemblage_from_json(io::load_json_file(assemblage_path));
      std::cout << scalar_line(
          "sw", steerable_weight(a, options_with_tol(tol)).value);
    } else if (app.got_subcommand(witness)) {
      const Assemblage a =
          io::assemblage_from_json(io::load_json_file(assemblage_path));
      const RobustnessResult rr = steering_robustness(a, options_with_tol(tol));
      emit(io::witness_to_json(rr.witness).dump(2) + "\n", out_path);
    } else if (app.got_subcommand(beta)) {
      const WitnessSet f =
          io::witness_from_json(io::load_json_file(witness_path));
      const BetaGame g = beta_from_witness(f, tomo_by_name(tomo_name));
      emit(io::game_to_json(g).dump(2) + "\n", out_path);
    } else if (app.got_subcommand(correlations_cmd)) {
      const Assemblage a =
          io::assemblage_from_json(io::load_json_file(assemblage_path));
      CorrelationTable table = correlations(
          a, max_entangled_projector(a.dim()), tomo_by_name(tomo_name));
      if (eta != 1.0) table = apply_loss(table, eta);
      emit(io::table_to_json(table).dump(2) + "\n", out_path);
    } else if (app.got_subcommand(mdi_ratio_cmd)) {
      const CorrelationTable table =
          io::table_from_json(io::load_json_file(table_path));
      const BetaGame g = io::game_from_json(io::load_json_file(game_path));
      std::cout << scalar_line("ratio", mdi_ratio(table, g));
    } else if (app.got_subcommand(mdi_measure_cmd)) {
      const Assemblage a =
          io::assemblage_from_json(io::load_json_file(assemblage_path));
      std::cout << scalar_line(
          "s_mdi",
          mdi_measure(a, tomo_by_name(tomo_name), options_with_tol(tol)));
    } else if (app.got_subcommand(sweep)) {
      const std::vector<SweepRow> rows = visibility_sweep(
          linear_grid(sweep_from, sweep_to, sweep_steps), tomo_by_name(tomo_name));
      emit(io::sweep_csv(rows), out_path);
    }
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace steerkit
