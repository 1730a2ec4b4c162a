#include "hedgetrack/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hedgetrack {

LossMode parse_loss_mode(const std::string& name) {
  if (name == "expected") return LossMode::expected;
  if (name == "sampled") return LossMode::sampled;
  throw std::invalid_argument("unknown loss mode: " + name);
}

std::string to_string(LossMode mode) {
  return mode == LossMode::expected ? "expected" : "sampled";
}

std::uint64_t total_delay(std::span<const std::uint64_t> anchors) {
  if (anchors.empty()) {
    throw std::invalid_argument("total_delay: no anchors");
  }
  if (anchors.front() != 1) {
    throw std::invalid_argument("total_delay: anchors must start at frame 1");
  }
  std::uint64_t total = 0;
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    if (anchors[i] <= anchors[i - 1]) {
      throw std::invalid_argument("total_delay: anchors not increasing");
    }
    const std::uint64_t gap = anchors[i] - anchors[i - 1];
    total += gap * (gap + 1) / 2;
  }
  return total;
}

std::uint64_t partial_delay(std::span<const std::uint64_t> anchors,
                            std::uint64_t t) {
  const std::uint64_t closed = total_delay(anchors);
  if (t < anchors.back()) {
    throw std::invalid_argument("partial_delay: t precedes the last anchor");
  }
  const std::uint64_t open = t - anchors.back();
  return closed + open * (open + 1) / 2;
}

double delay_regret_bound(std::uint64_t frames, std::uint64_t total_delay,
                          std::size_t n_experts, double constant) {
  return constant * std::sqrt(static_cast<double>(frames + total_delay) *
                              std::log(static_cast<double>(n_experts)));
}

double ratio_regret_bound(std::uint64_t frames, double anchor_ratio,
                          std::size_t n_experts, double constant) {
  if (!(anchor_ratio > 0.0 && anchor_ratio <= 1.0)) {
    throw std::invalid_argument("ratio_regret_bound: r must be in (0,1]");
  }
  return constant * std::sqrt(static_cast<double>(frames) *
                              std::log(static_cast<double>(n_experts)) /
                              anchor_ratio);
}

RegretReport compute_regret(const RegretInputs& inputs, LossMode mode,
                            double bound_constant) {
  const std::size_t frames = inputs.expert_losses.size();
  if (frames == 0) {
    throw std::invalid_argument("compute_regret: no frames");
  }
  if (inputs.player_losses.size() != frames ||
      inputs.weights.size() != frames || inputs.is_anchor.size() != frames) {
    throw std::invalid_argument("compute_regret: input length mismatch");
  }
  const std::size_t n = inputs.expert_losses.front().size();

  double player = 0.0;
  std::vector<double> expert_total(n, 0.0);
  for (std::size_t k = 0; k < frames; ++k) {
    const auto& row = inputs.expert_losses[k];
    if (row.size() != n || inputs.weights[k].size() != n) {
      throw std::invalid_argument("compute_regret: expert count varies");
    }
    if (mode == LossMode::expected && !inputs.is_anchor[k]) {
      double expectation = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        expectation += inputs.weights[k][i] * row[i];
      }
      player += expectation;
    } else {
      player += inputs.player_losses[k];
    }
    for (std::size_t i = 0; i < n; ++i) expert_total[i] += row[i];
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (expert_total[i] < expert_total[best]) best = i;
  }

  RegretReport report{inputs.reference,
                      mode,
                      frames,
                      player,
                      best,
                      expert_total[best],
                      player - expert_total[best],
                      inputs.anchor_frames,
                      total_delay(inputs.anchor_frames),
                      1.0,
                      0.0,
                      0.0};
  if (frames > 1) {
    report.anchor_ratio =
        static_cast<double>(inputs.anchor_frames.size() - 1) /
        static_cast<double>(frames - 1);
  }
  // A run with no detected anchors has ratio 0; clamp into (0,1] so the
  // ratio bound stays defined.
  if (report.anchor_ratio <= 0.0) {
    report.anchor_ratio = 1.0 / static_cast<double>(frames);
  }
  report.bound_delay =
      delay_regret_bound(frames, report.delay, n, bound_constant);
  report.bound_ratio =
      ratio_regret_bound(frames, report.anchor_ratio, n, bound_constant);
  return report;
}

RegretInputs make_regret_inputs(const Trace& trace, const RunResult& result,
                                const std::string& reference) {
  if (trace.observations.size() != result.decisions.size()) {
    throw std::invalid_argument("make_regret_inputs: trace/run mismatch");
  }
  const bool use_feedback = reference == "feedback";
  if (!use_feedback && reference != "ground_truth") {
    throw std::invalid_argument("make_regret_inputs: unknown reference " +
                                reference);
  }

  std::size_t covered = 0;
  if (use_feedback) {
    covered = result.anchors.back().frame;  // frames 1..last anchor
  } else {
    covered = trace.observations.size();
    for (const auto& obs : trace.observations) {
      if (!obs.gt) {
        throw std::invalid_argument(
            "make_regret_inputs: trace lacks ground truth at frame " +
            std::to_string(obs.frame));
      }
    }
  }

  RegretInputs inputs;
  inputs.reference = reference;
  inputs.expert_losses.reserve(covered);
  inputs.player_losses.reserve(covered);
  inputs.weights.reserve(covered);
  inputs.is_anchor.reserve(covered);
  for (const auto& a : result.anchors) {
    if (a.frame <= covered) inputs.anchor_frames.push_back(a.frame);
  }

  const std::size_t n = result.n_experts;
  for (std::size_t k = 0; k < covered; ++k) {
    const BoundingBox ref = use_feedback ? *result.feedback[k]
                                         : *trace.observations[k].gt;
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = loss(trace.observations[k].boxes[i], ref);
    }
    inputs.expert_losses.push_back(std::move(row));
    inputs.player_losses.push_back(loss(result.decisions[k].prediction, ref));
    inputs.is_anchor.push_back(
        result.decisions[k].mode == DecisionMode::anchor ? 1 : 0);
    // Weights in force at frame k+1 are the ones left after frame k (the
    // initial uniform vector for frame 1, which is an anchor anyway).
    const WeightVector& w =
        k == 0 ? result.decisions[0].weights_after
               : result.decisions[k - 1].weights_after;
    inputs.weights.push_back(w.values());
  }
  return inputs;
}

std::vector<double> cumulative_expert_losses(const RegretInputs& inputs) {
  if (inputs.expert_losses.empty()) {
    throw std::invalid_argument("cumulative_expert_losses: no frames");
  }
  std::vector<double> totals(inputs.expert_losses.front().size(), 0.0);
  for (const auto& row : inputs.expert_losses) {
    for (std::size_t i = 0; i < totals.size(); ++i) totals[i] += row[i];
  }
  return totals;
}

OutperformanceReport average_outperformance(
    std::span<const SequenceSummary> sequences) {
  if (sequences.empty()) {
    throw std::invalid_argument("average_outperformance: empty sequence set");
  }
  const std::size_t n = sequences.front().expert_losses.size();
  for (const auto& s : sequences) {
    if (s.expert_losses.size() != n) {
      throw std::invalid_argument(
          "average_outperformance: expert count varies across sequences");
    }
  }

  std::vector<double> total(n, 0.0);
  for (const auto& s : sequences) {
    for (std::size_t i = 0; i < n; ++i) total[i] += s.expert_losses[i];
  }
  std::size_t overall_best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (total[i] < total[overall_best]) overall_best = i;
  }

  OutperformanceReport report;
  report.overall_best = overall_best;
  report.delta = std::numeric_limits<double>::infinity();

  double regret_sum = 0.0;
  double aggregator_sum = 0.0;
  double best_sum = 0.0;
  std::size_t uncovered = 0;
  for (const auto& s : sequences) {
    const double seq_min =
        *std::min_element(s.expert_losses.begin(), s.expert_losses.end());
    const double excess = s.expert_losses[overall_best] - seq_min;
    if (excess == 0.0) {
      report.covered.push_back(s.id);
    } else {
      ++uncovered;
      report.delta = std::min(report.delta, excess);
    }
    regret_sum += s.aggregator_loss - seq_min;
    aggregator_sum += s.aggregator_loss;
    best_sum += s.expert_losses[overall_best];
  }

  const double count = static_cast<double>(sequences.size());
  report.mean_regret = regret_sum / count;
  report.rhs = uncovered == 0
                   ? 0.0
                   : (static_cast<double>(uncovered) / count) * report.delta;
  report.condition_holds = report.mean_regret <= report.rhs;
  report.aggregator_mean_loss = aggregator_sum / count;
  report.overall_best_mean_loss = best_sum / count;
  return report;
}

double success_auc(std::span<const BoundingBox> predictions,
                   std::span<const BoundingBox> ground_truth) {
  if (predictions.empty() || predictions.size() != ground_truth.size()) {
    throw std::invalid_argument("success_auc: empty or misaligned input");
  }
  std::vector<double> overlaps(predictions.size());
  for (std::size_t k = 0; k < predictions.size(); ++k) {
    overlaps[k] = iou(predictions[k], ground_truth[k]);
  }
  double sum = 0.0;
  for (int step = 0; step <= 100; ++step) {
    const double threshold = static_cast<double>(step) / 100.0;
    std::size_t hits = 0;
    for (double v : overlaps) {
      if (v > threshold) ++hits;
    }
    sum += static_cast<double>(hits) / static_cast<double>(overlaps.size());
  }
  return sum / 101.0;
}

double precision_dp(std::span<const BoundingBox> predictions,
                    std::span<const BoundingBox> ground_truth) {
  if (predictions.empty() || predictions.size() != ground_truth.size()) {
    throw std::invalid_argument("precision_dp: empty or misaligned input");
  }
  std::size_t hits = 0;
  for (std::size_t k = 0; k < predictions.size(); ++k) {
    if (center_distance(predictions[k], ground_truth[k]) <= 20.0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

std::vector<std::vector<std::size_t>> rank_histogram(
    const std::vector<std::vector<double>>& scores) {
  if (scores.empty()) {
    throw std::invalid_argument("rank_histogram: no trackers");
  }
  const std::size_t trackers = scores.size();
  const std::size_t sequences = scores.front().size();
  for (const auto& row : scores) {
    if (row.size() != sequences || sequences == 0) {
      throw std::invalid_argument("rank_histogram: incomplete score matrix");
    }
  }
  std::vector<std::vector<std::size_t>> counts(
      trackers, std::vector<std::size_t>(trackers, 0));
  for (std::size_t s = 0; s < sequences; ++s) {
    for (std::size_t i = 0; i < trackers; ++i) {
      std::size_t rank = 1;
      for (std::size_t j = 0; j < trackers; ++j) {
        if (scores[j][s] > scores[i][s]) ++rank;
      }
      ++counts[i][rank - 1];
    }
  }
  return counts;
}

}  // namespace hedgetrack
