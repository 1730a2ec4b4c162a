#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hedgetrack/geometry.hpp"

namespace hedgetrack {

// Per-expert cumulative losses over one feedback segment.
using SegmentLosses = std::vector<double>;

// Probability distribution over N >= 2 experts. Non-negative entries
// summing to 1 within 1e-9, validated at construction.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);

  static WeightVector uniform(std::size_t n);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& values() const { return weights_; }

  bool operator==(const WeightVector& other) const {
    return weights_ == other.weights_;
  }

 private:
  std::vector<double> weights_;
};

// Learning-rate schedule driven by the doubling trick: eta = sqrt(ln N / Z)
// where Z is the tentative horizon budget, doubled whenever the consumed
// time-plus-delay reaches it.
struct LearningRateState {
  std::size_t n_experts;
  std::uint64_t budget;    // Z, starts at 1 and only ever doubles
  double eta;              // sqrt(ln n_experts / budget)
  std::uint64_t consumed;  // latest t + D_t seen

  explicit LearningRateState(std::size_t n);
};

// Uniform initial weights 1/n. Throws if n < 2.
WeightVector init_weights(std::size_t n);

// Sums per-frame losses loss(f_i, y) over a segment, one total per expert.
// `predictions[k]` holds the N expert boxes for the k-th segment frame and
// must align one-to-one with `feedback`.
SegmentLosses segment_losses(
    std::span<const std::vector<BoundingBox>> predictions,
    std::span<const BoundingBox> feedback);

// Exponential weight update w_i' = w_i exp(-eta L_i) / sum_j w_j exp(-eta L_j),
// evaluated in log-space so long runs cannot underflow. If every term still
// vanishes (unreachable in log-space, kept as a guard) the result is uniform
// and *degenerate_reset is set when provided.
WeightVector update_weights(const WeightVector& weights,
                            const SegmentLosses& losses, double eta,
                            bool* degenerate_reset = nullptr);

// Doubles the budget while t + delay >= Z, then refreshes eta.
LearningRateState doubling_tick(LearningRateState state, std::uint64_t t,
                                std::uint64_t delay);

// Draws expert index i with probability w_i: one 64-bit draw mapped to
// [0,1), inverse-CDF over cumulative weights. Boundary ties resolve to the
// lower index; zero-mass experts are never chosen.
std::size_t select_expert(const WeightVector& weights, std::mt19937_64& rng);

// sum_i w_i * frame_losses[i]: the exact expected loss of stochastic
// selection, used by expected-mode analysis.
double expected_step_loss(const WeightVector& weights,
                          std::span<const double> frame_losses);

}  // namespace hedgetrack
