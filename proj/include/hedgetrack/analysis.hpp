#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hedgetrack/engine.hpp"

namespace hedgetrack {

enum class LossMode { expected, sampled };

LossMode parse_loss_mode(const std::string& name);
std::string to_string(LossMode mode);

// Total delay over an anchor-frame list: sum of g(g+1)/2 across consecutive
// gaps g. The list must be strictly increasing and start at 1.
std::uint64_t total_delay(std::span<const std::uint64_t> anchors);

// Delay consumed by frame t >= the last anchor: total_delay plus the partial
// sum 1 + 2 + ... + (t - last anchor).
std::uint64_t partial_delay(std::span<const std::uint64_t> anchors,
                            std::uint64_t t);

// c * sqrt((T + D) ln N): the regret ceiling driven by total delay.
double delay_regret_bound(std::uint64_t frames, std::uint64_t total_delay,
                          std::size_t n_experts, double constant = 1.0);

// c * sqrt(T ln N / r): the regret ceiling driven by the anchor ratio.
double ratio_regret_bound(std::uint64_t frames, double anchor_ratio,
                          std::size_t n_experts, double constant = 1.0);

// Per-frame losses of experts and player against one reference signal
// (pseudo-ground-truth feedback or true ground truth), plus the weights in
// force at each frame. Frame k of these arrays is the k-th covered frame.
struct RegretInputs {
  std::string reference;  // "feedback" or "ground_truth", for the report
  std::vector<std::vector<double>> expert_losses;  // [frame][expert]
  std::vector<double> player_losses;               // realized loss of p^t
  std::vector<std::vector<double>> weights;        // in force at the frame
  std::vector<std::uint8_t> is_anchor;
  std::vector<std::uint64_t> anchor_frames;
};

struct RegretReport {
  std::string reference;
  LossMode mode;
  std::uint64_t frames;      // T: frames covered by the reference
  double player_loss;        // expected or sampled cumulative loss
  std::size_t best_expert;   // argmin cumulative loss, lowest index on ties
  double best_expert_loss;
  double regret;             // player_loss - best_expert_loss
  std::vector<std::uint64_t> anchors;
  std::uint64_t delay;       // D
  double anchor_ratio;       // (|anchors| - 1) / (T - 1); 1 when T == 1
  double bound_delay;        // delay_regret_bound at constant c
  double bound_ratio;        // ratio_regret_bound at constant c
};

// Expected mode replaces the player's sampled loss with the exact
// expectation under the in-force weights on non-anchor frames; anchor-frame
// predictions are deterministic either way.
RegretReport compute_regret(const RegretInputs& inputs, LossMode mode,
                            double bound_constant = 1.0);

// Builds RegretInputs from a finished run. reference = "feedback" covers
// frames 1..last anchor; "ground_truth" covers every frame carrying gt
// (which must be all of them).
RegretInputs make_regret_inputs(const Trace& trace, const RunResult& result,
                                const std::string& reference);

// Column sums of the per-frame loss table: one cumulative loss per expert.
std::vector<double> cumulative_expert_losses(const RegretInputs& inputs);

// One sequence's cumulative losses against a common reference.
struct SequenceSummary {
  std::string id;
  std::vector<double> expert_losses;  // cumulative per expert
  double aggregator_loss;             // cumulative player loss
};

struct OutperformanceReport {
  std::size_t overall_best;  // expert minimizing summed loss over sequences
  std::vector<std::string> covered;  // sequences where it matches the best
  double delta;              // min excess of the overall best off `covered`
  double mean_regret;
  double rhs;                // |V \ S| / |V| * delta
  bool condition_holds;      // mean_regret <= rhs
  double aggregator_mean_loss;
  double overall_best_mean_loss;
};

// Evaluates the average-outperformance condition over a sequence set: when
// the mean regret is at most rhs, the aggregator's mean loss cannot exceed
// the overall-best expert's.
OutperformanceReport average_outperformance(
    std::span<const SequenceSummary> sequences);

// Mean over 101 thresholds k/100 of the fraction of frames whose IoU with
// ground truth strictly exceeds the threshold.
double success_auc(std::span<const BoundingBox> predictions,
                   std::span<const BoundingBox> ground_truth);

// Fraction of frames whose center distance to ground truth is <= 20 px.
double precision_dp(std::span<const BoundingBox> predictions,
                    std::span<const BoundingBox> ground_truth);

// Competition ranking (ties share the minimum rank) of trackers by
// descending score, per sequence. scores[tracker][sequence]; the result is
// counts[tracker][rank-1].
std::vector<std::vector<std::size_t>> rank_histogram(
    const std::vector<std::vector<double>>& scores);

}  // namespace hedgetrack
