#pragma once

#include <string>

#include "json.hpp"

#include "sbill/engine.hpp"
#include "sbill/error.hpp"

namespace sbill {

inline constexpr const char* kSchemaVersion = "sbill/1";

/// {"schema": ..., "kind": kind} merged with the fields of body.
nlohmann::json envelope(const std::string& kind, nlohmann::json body);

/// 17 significant digits.
std::string decimal17(double v);

/// {"at": "minus:0:1/3", "xy": ["p/q", "p/q"], "decimal": [x, y]}
nlohmann::json point_report(const TablePair& T, const EdgePoint& p);
nlohmann::json pair_report(const PhasePair& p);
/// Vertices as rational strings plus decimals, and the table flags.
nlohmann::json table_report(const TablePair& T);
nlohmann::json step_report(const TablePair& T, const StepOutcome& o);
/// Points, symbolic trajectory, period (null when not found) and stop reasons.
nlohmann::json trajectory_report(const TablePair& T, const Trajectory& tr,
                                 const SymbolicTrajectory& sym);

nlohmann::json error_report(const Error& e);

/// "minus:0:1/3,plus:1:1/2". Edge indices are checked against T when given.
PhasePair parse_seed(const std::string& s, const TablePair* T = nullptr);

}  // namespace sbill
