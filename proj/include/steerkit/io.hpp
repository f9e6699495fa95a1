#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "steerkit/sdp.hpp"
#include "steerkit/werner.hpp"

namespace steerkit {
namespace io {

// Matrix JSON: {"dim": n, "re": [[...]], "im": [[...]]}, row-major.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

// Assemblage JSON: {"nSettings", "nOutcomes", "dim", "sigma": {"x:a": matrix}}.
nlohmann::json assemblage_to_json(const Assemblage& a);
Assemblage assemblage_from_json(const nlohmann::json& j);

// Witness JSON mirrors the assemblage layout plus a "normalization" tag
// ("SRdual" | "SWdual" | "Shifted").
nlohmann::json witness_to_json(const WitnessSet& f);
WitnessSet witness_from_json(const nlohmann::json& j);

// CorrelationTable JSON: {"nSettings","nOutcomes","tomoSize","p":{"x:a:y": v}}.
nlohmann::json table_to_json(const CorrelationTable& p);
CorrelationTable table_from_json(const nlohmann::json& j);

// BetaGame JSON: {"tomo": [matrices], "beta": {"x:a:y": v}} plus explicit
// "nSettings"/"nOutcomes". Readers infer the index ranges from the beta keys
// when the explicit fields are absent; absent keys read as zero.
nlohmann::json game_to_json(const BetaGame& g);
BetaGame game_from_json(const nlohmann::json& j);

// Hidden-state model JSON: {"nSettings","nOutcomes","dim",
// "states": {"<strategy encoding>": matrix}}.
nlohmann::json lhs_model_to_json(const LhsModel& m);
LhsModel lhs_model_from_json(const nlohmann::json& j);

// Self-describing dump of a conic program for cross-checking against other
// solvers: blocks, objective coefficients, constraints.
nlohmann::json sdp_problem_to_json(const SdpProblem& p);

// Sweep CSV with the mandatory header v,s_mdi,steering_robustness,abs_diff.
std::string sweep_csv(const std::vector<SweepRow>& rows);

// 12 significant digits, the fixed console/CSV precision.
std::string format_number(double x);

nlohmann::json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& content);

}  // namespace io
}  // namespace steerkit
