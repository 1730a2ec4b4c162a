#include "hedgetrack/report.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace hedgetrack {

namespace {

using nlohmann::json;

json box_json(const BoundingBox& b) { return json::array({b.x, b.y, b.w, b.h}); }

json losses_section(const RegretInputs& inputs) {
  json section;
  section["reference"] = inputs.reference;
  section["frames"] = inputs.expert_losses.size();
  section["expert"] = inputs.expert_losses;
  section["player"] = inputs.player_losses;
  section["weights"] = inputs.weights;
  section["is_anchor"] = inputs.is_anchor;
  section["anchor_frames"] = inputs.anchor_frames;
  return section;
}

}  // namespace

json run_report_json(const Trace& trace, const RunResult& result) {
  json report;
  report["schema_version"] = kReportSchemaVersion;
  report["kind"] = "run";
  report["sequence_id"] = result.sequence_id;
  report["n_experts"] = result.n_experts;
  report["frames"] = result.decisions.size();
  report["config"] = {{"theta", result.config.theta},
                      {"seed", result.config.seed},
                      {"loss_mode", result.config.loss_mode}};

  json anchors = json::array();
  for (const auto& a : result.anchors) {
    json rec{{"q", a.q},
             {"frame", a.frame},
             {"box", box_json(a.box)},
             {"similarity", a.similarity}};
    rec["expert"] = a.best_expert ? json(*a.best_expert) : json(nullptr);
    anchors.push_back(std::move(rec));
  }
  report["anchors"] = std::move(anchors);

  json events = json::array();
  for (const auto& e : result.events) {
    events.push_back(
        json{{"frame", e.frame}, {"kind", e.kind}, {"value", e.value}});
  }
  report["events"] = std::move(events);

  json decisions = json::array();
  for (const auto& d : result.decisions) {
    json rec{{"frame", d.frame},
             {"box", box_json(d.prediction)},
             {"mode", d.mode == DecisionMode::anchor ? "anchor" : "sampled"},
             {"weights", d.weights_after.values()}};
    rec["expert"] = d.chosen_expert ? json(*d.chosen_expert) : json(nullptr);
    decisions.push_back(std::move(rec));
  }
  report["decisions"] = std::move(decisions);

  json feedback = json::array();
  for (const auto& fb : result.feedback) {
    feedback.push_back(fb ? box_json(*fb) : json(nullptr));
  }
  report["feedback"] = std::move(feedback);

  const bool gt_present =
      !trace.observations.empty() &&
      trace.observations.front().gt.has_value() &&
      trace.observations.back().gt.has_value();
  report["gt_present"] = gt_present;

  json losses;
  losses["feedback"] =
      losses_section(make_regret_inputs(trace, result, "feedback"));
  losses["ground_truth"] =
      gt_present
          ? losses_section(make_regret_inputs(trace, result, "ground_truth"))
          : json(nullptr);
  report["losses"] = std::move(losses);
  return report;
}

json regret_report_json(const RegretReport& report) {
  return json{{"reference", report.reference},
              {"mode", to_string(report.mode)},
              {"frames", report.frames},
              {"player_loss", report.player_loss},
              {"best_expert", report.best_expert},
              {"best_expert_loss", report.best_expert_loss},
              {"regret", report.regret},
              {"anchors", report.anchors},
              {"delay", report.delay},
              {"anchor_ratio", report.anchor_ratio},
              {"bound_delay", report.bound_delay},
              {"bound_ratio", report.bound_ratio}};
}

json outperformance_json(const OutperformanceReport& report) {
  json value{{"overall_best", report.overall_best},
             {"covered", report.covered},
             {"mean_regret", report.mean_regret},
             {"rhs", report.rhs},
             {"condition_holds", report.condition_holds},
             {"aggregator_mean_loss", report.aggregator_mean_loss},
             {"overall_best_mean_loss", report.overall_best_mean_loss}};
  // +inf is not representable in JSON; null marks "no uncovered sequence".
  value["delta"] = std::isfinite(report.delta) ? json(report.delta)
                                               : json(nullptr);
  return value;
}

json sweep_report_json(const SweepResult& result) {
  json rows = json::array();
  for (const auto& row : result.rows) {
    rows.push_back(json{{"theta", row.theta},
                        {"auc", row.auc},
                        {"anchor_ratio", row.anchor_ratio}});
  }
  return json{{"schema_version", kReportSchemaVersion},
              {"kind", "sweep"},
              {"rows", std::move(rows)},
              {"best_theta", result.rows[result.best_index].theta}};
}

RegretInputs regret_inputs_from_report(const json& report,
                                       const std::string& reference) {
  const json& section = report.at("losses").at(reference);
  if (section.is_null()) {
    throw std::invalid_argument("report has no losses for " + reference);
  }
  RegretInputs inputs;
  inputs.reference = section.at("reference").get<std::string>();
  inputs.expert_losses =
      section.at("expert").get<std::vector<std::vector<double>>>();
  inputs.player_losses = section.at("player").get<std::vector<double>>();
  inputs.weights =
      section.at("weights").get<std::vector<std::vector<double>>>();
  inputs.is_anchor = section.at("is_anchor").get<std::vector<std::uint8_t>>();
  inputs.anchor_frames =
      section.at("anchor_frames").get<std::vector<std::uint64_t>>();
  return inputs;
}

json analysis_report_json(const std::vector<json>& run_reports,
                          double bound_constant) {
  if (run_reports.empty()) {
    throw std::invalid_argument("analysis_report_json: no run reports");
  }
  json sequences = json::array();
  std::vector<SequenceSummary> feedback_summaries;
  std::vector<SequenceSummary> gt_summaries;
  bool all_gt = true;

  for (const auto& rr : run_reports) {
    const LossMode mode =
        parse_loss_mode(rr.at("config").at("loss_mode").get<std::string>());
    json entry;
    entry["sequence_id"] = rr.at("sequence_id");

    const RegretInputs fb = regret_inputs_from_report(rr, "feedback");
    const RegretReport fb_report = compute_regret(fb, mode, bound_constant);
    entry["feedback"] = regret_report_json(fb_report);
    feedback_summaries.push_back(SequenceSummary{
        rr.at("sequence_id").get<std::string>(),
        cumulative_expert_losses(fb), fb_report.player_loss});

    if (!rr.at("losses").at("ground_truth").is_null()) {
      const RegretInputs gt = regret_inputs_from_report(rr, "ground_truth");
      const RegretReport gt_report = compute_regret(gt, mode, bound_constant);
      entry["ground_truth"] = regret_report_json(gt_report);
      gt_summaries.push_back(SequenceSummary{
          rr.at("sequence_id").get<std::string>(),
          cumulative_expert_losses(gt), gt_report.player_loss});
    } else {
      entry["ground_truth"] = nullptr;
      all_gt = false;
    }
    sequences.push_back(std::move(entry));
  }

  json report;
  report["schema_version"] = kReportSchemaVersion;
  report["kind"] = "analysis";
  report["bound_constant"] = bound_constant;
  report["sequences"] = std::move(sequences);
  report["outperformance"] = {
      {"feedback",
       outperformance_json(average_outperformance(feedback_summaries))},
      {"ground_truth",
       all_gt ? outperformance_json(average_outperformance(gt_summaries))
              : json(nullptr)}};
  return report;
}

void write_report(const json& report, const std::string& path) {
  const std::string text = report.dump(2) + "\n";
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open report file for writing: " + path);
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing report file: " + path);
  }
}

json load_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open report file: " + path);
  }
  json report = json::parse(in, nullptr, false);
  if (report.is_discarded()) {
    throw std::runtime_error("malformed report JSON: " + path);
  }
  return report;
}

}  // namespace hedgetrack
