#pragma once

#include <string>

#include "json.hpp"

#include "hedgetrack/analysis.hpp"
#include "hedgetrack/engine.hpp"
#include "hedgetrack/sweep.hpp"

namespace hedgetrack {

inline constexpr int kReportSchemaVersion = 1;

// Full run report: decisions, anchors, events, feedback, and per-frame loss
// tables against the pseudo-ground-truth (and true ground truth when the
// trace carries it) so later analysis never re-reads the trace.
nlohmann::json run_report_json(const Trace& trace, const RunResult& result);

nlohmann::json regret_report_json(const RegretReport& report);
nlohmann::json outperformance_json(const OutperformanceReport& report);
nlohmann::json sweep_report_json(const SweepResult& result);

// Rebuilds regret inputs from a run report's loss table. reference is
// "feedback" or "ground_truth".
RegretInputs regret_inputs_from_report(const nlohmann::json& report,
                                       const std::string& reference);

// Cross-sequence analysis over run reports: per-sequence regret (both
// references when present) plus the average-outperformance condition.
nlohmann::json analysis_report_json(
    const std::vector<nlohmann::json>& run_reports, double bound_constant);

// Serializes with a trailing newline; the file is written in one shot so a
// failed run never leaves a partial report.
void write_report(const nlohmann::json& report, const std::string& path);
nlohmann::json load_report(const std::string& path);

}  // namespace hedgetrack
