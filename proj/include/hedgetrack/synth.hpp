#pragma once

#include <cstdint>

#include "hedgetrack/trace.hpp"

namespace hedgetrack {

// Knobs for the adversarial trace family: a latent target follows a smooth
// random walk; during each switch_period exactly one expert tracks it with
// noise_scale jitter while the rest drift away; the tracking expert's
// feature similarity to the template crosses the design threshold (0.7)
// with probability anchor_signal_rate per frame.
struct SyntheticScenario {
  std::uint64_t frames = 1000;          // T
  std::size_t n_experts = 4;            // N
  std::uint64_t switch_period = 250;    // frames between best-expert changes
  double noise_scale = 2.0;             // px jitter of the tracking expert
  double anchor_signal_rate = 0.2;      // target anchor ratio r
  std::uint64_t seed = 1;
  std::string sequence_id = "synthetic";
};

// Threshold the generator calibrates anchor signals against: similarities
// land strictly above it on signal frames and strictly below otherwise.
inline constexpr double kDesignTheta = 0.7;

// Deterministic per seed, ground truth included.
Trace generate_adversarial(const SyntheticScenario& scenario);

}  // namespace hedgetrack
