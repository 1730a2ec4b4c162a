#include "hedgetrack/hedge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hedgetrack/rng.hpp"

namespace hedgetrack {

WeightVector::WeightVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.size() < 2) {
    throw std::invalid_argument("WeightVector: need at least 2 experts");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("WeightVector: negative or non-finite entry");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("WeightVector: entries must sum to 1");
  }
}

WeightVector WeightVector::uniform(std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("WeightVector::uniform: need n >= 2");
  }
  return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

LearningRateState::LearningRateState(std::size_t n)
    : n_experts(n),
      budget(1),
      eta(std::sqrt(std::log(static_cast<double>(n)))),
      consumed(0) {
  if (n < 2) {
    throw std::invalid_argument("LearningRateState: need n >= 2");
  }
}

WeightVector init_weights(std::size_t n) { return WeightVector::uniform(n); }

SegmentLosses segment_losses(
    std::span<const std::vector<BoundingBox>> predictions,
    std::span<const BoundingBox> feedback) {
  if (predictions.size() != feedback.size()) {
    throw std::invalid_argument(
        "segment_losses: prediction frames do not align with feedback");
  }
  if (predictions.empty()) {
    throw std::invalid_argument("segment_losses: empty segment");
  }
  const std::size_t n = predictions.front().size();
  SegmentLosses totals(n, 0.0);
  for (std::size_t k = 0; k < predictions.size(); ++k) {
    if (predictions[k].size() != n) {
      throw std::invalid_argument("segment_losses: expert count varies");
    }
    for (std::size_t i = 0; i < n; ++i) {
      totals[i] += loss(predictions[k][i], feedback[k]);
    }
  }
  return totals;
}

WeightVector update_weights(const WeightVector& weights,
                            const SegmentLosses& losses, double eta,
                            bool* degenerate_reset) {
  if (losses.size() != weights.size()) {
    throw std::invalid_argument("update_weights: loss/weight size mismatch");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("update_weights: eta must be positive");
  }
  if (degenerate_reset) *degenerate_reset = false;

  const std::size_t n = weights.size();
  std::vector<double> logits(n);
  double max_logit = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    logits[i] = std::log(weights[i]) - eta * losses[i];
    max_logit = std::max(max_logit, logits[i]);
  }
  if (!std::isfinite(max_logit)) {
    // All weights zero: impossible for a simplex, guard anyway.
    if (degenerate_reset) *degenerate_reset = true;
    return WeightVector::uniform(n);
  }
  double total = 0.0;
  std::vector<double> shifted(n);
  for (std::size_t i = 0; i < n; ++i) {
    shifted[i] = std::exp(logits[i] - max_logit);
    total += shifted[i];
  }
  std::vector<double> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    next[i] = shifted[i] / total;
  }
  return WeightVector(std::move(next));
}

LearningRateState doubling_tick(LearningRateState state, std::uint64_t t,
                                std::uint64_t delay) {
  const std::uint64_t consumed = t + delay;
  state.consumed = consumed;
  while (consumed >= state.budget) {
    state.budget *= 2;
  }
  state.eta = std::sqrt(std::log(static_cast<double>(state.n_experts)) /
                        static_cast<double>(state.budget));
  return state;
}

std::size_t select_expert(const WeightVector& weights, std::mt19937_64& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  std::size_t last_positive = 0;
  bool seen_positive = false;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    seen_positive = true;
    if (u <= acc) return i;
  }
  // u fell past the accumulated total (rounding); return the last live expert.
  if (!seen_positive) {
    throw std::logic_error("select_expert: no positive weight");
  }
  return last_positive;
}

double expected_step_loss(const WeightVector& weights,
                          std::span<const double> frame_losses) {
  if (frame_losses.size() != weights.size()) {
    throw std::invalid_argument("expected_step_loss: length mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    total += weights[i] * frame_losses[i];
  }
  return total;
}

}  // namespace hedgetrack
