#include "hedgetrack/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "hedgetrack/rng.hpp"

namespace hedgetrack {

namespace {

constexpr std::size_t kFeatureDim = 8;
constexpr double kBoxSize = 40.0;

BoundingBox centered_box(double cx, double cy) {
  return BoundingBox(cx - kBoxSize / 2.0, cy - kBoxSize / 2.0, kBoxSize,
                     kBoxSize);
}

std::vector<double> random_unit(std::mt19937_64& rng) {
  std::vector<double> v(kFeatureDim);
  double sq = 0.0;
  for (auto& x : v) {
    x = gaussian(rng);
    sq += x * x;
  }
  if (sq < 1e-24) {
    v.assign(kFeatureDim, 0.0);
    v[0] = 1.0;
    return v;
  }
  const double inv = 1.0 / std::sqrt(sq);
  for (auto& x : v) x *= inv;
  return v;
}

// Unit vector whose normalized cosine similarity to the (unit) template is
// exactly `target`: c * tmpl + sqrt(1-c^2) * u with u a random unit vector
// orthogonal to tmpl.
FeatureVector feature_with_similarity(std::mt19937_64& rng,
                                      const std::vector<double>& tmpl,
                                      double target) {
  const double c = 2.0 * target - 1.0;
  std::vector<double> g(kFeatureDim);
  for (auto& x : g) x = gaussian(rng);
  double dot = 0.0;
  for (std::size_t k = 0; k < kFeatureDim; ++k) dot += g[k] * tmpl[k];
  double sq = 0.0;
  for (std::size_t k = 0; k < kFeatureDim; ++k) {
    g[k] -= dot * tmpl[k];
    sq += g[k] * g[k];
  }
  if (sq < 1e-24) {
    // Degenerate draw; fall back to the basis vector least aligned with
    // the template.
    std::size_t axis = 0;
    for (std::size_t k = 1; k < kFeatureDim; ++k) {
      if (std::abs(tmpl[k]) < std::abs(tmpl[axis])) axis = k;
    }
    g.assign(kFeatureDim, 0.0);
    g[axis] = 1.0;
    double d = tmpl[axis];
    sq = 0.0;
    for (std::size_t k = 0; k < kFeatureDim; ++k) {
      g[k] -= d * tmpl[k];
      sq += g[k] * g[k];
    }
  }
  const double scale = std::sqrt(std::max(0.0, 1.0 - c * c) / sq);
  std::vector<double> out(kFeatureDim);
  for (std::size_t k = 0; k < kFeatureDim; ++k) {
    out[k] = c * tmpl[k] + scale * g[k];
  }
  return FeatureVector(std::move(out));
}

}  // namespace

Trace generate_adversarial(const SyntheticScenario& scenario) {
  if (scenario.frames == 0 || scenario.n_experts < 2 ||
      scenario.switch_period == 0 || scenario.noise_scale <= 0.0 ||
      !(scenario.anchor_signal_rate > 0.0 &&
        scenario.anchor_signal_rate <= 1.0)) {
    throw std::invalid_argument("generate_adversarial: invalid scenario");
  }

  std::mt19937_64 rng(scenario.seed);
  const std::vector<double> tmpl = random_unit(rng);

  // Latent target: smooth random walk with AR(1) velocity.
  double cx = 500.0, cy = 500.0;
  double vx = 0.0, vy = 0.0;

  const std::size_t n = scenario.n_experts;
  std::vector<double> ex(n, cx), ey(n, cy);    // expert centers
  std::vector<double> dvx(n, 0.0), dvy(n, 0.0);  // drift velocities
  std::size_t correct = 0;

  std::vector<FrameObservation> observations;
  observations.reserve(scenario.frames);

  for (std::uint64_t t = 1; t <= scenario.frames; ++t) {
    if (t > 1) {
      vx = 0.85 * vx + 0.6 * gaussian(rng);
      vy = 0.85 * vy + 0.6 * gaussian(rng);
      cx += vx;
      cy += vy;
    }

    const std::size_t phase =
        static_cast<std::size_t>((t - 1) / scenario.switch_period);
    const std::size_t now_correct = phase % n;
    if (now_correct != correct) {
      // The outgoing expert starts drifting from where it last tracked;
      // the incoming one re-acquires the target.
      const double angle = uniform_in(rng, 0.0, 6.283185307179586);
      const double speed = uniform_in(rng, 3.0, 6.0);
      dvx[correct] = speed * std::cos(angle);
      dvy[correct] = speed * std::sin(angle);
      ex[now_correct] = cx;
      ey[now_correct] = cy;
      correct = now_correct;
    }

    FrameObservation obs;
    obs.frame = t;
    obs.boxes.reserve(n);
    obs.features.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == correct) {
        ex[i] = cx + scenario.noise_scale * gaussian(rng);
        ey[i] = cy + scenario.noise_scale * gaussian(rng);
        const bool signal = uniform01(rng) < scenario.anchor_signal_rate;
        const double sim = signal ? uniform_in(rng, 0.75, 0.98)
                                  : uniform_in(rng, 0.40, 0.68);
        obs.boxes.push_back(centered_box(ex[i], ey[i]));
        obs.features.push_back(feature_with_similarity(rng, tmpl, sim));
      } else {
        ex[i] += dvx[i] + gaussian(rng);
        ey[i] += dvy[i] + gaussian(rng);
        const double sim = uniform_in(rng, 0.38, 0.58);
        obs.boxes.push_back(centered_box(ex[i], ey[i]));
        obs.features.push_back(feature_with_similarity(rng, tmpl, sim));
      }
    }
    obs.gt = centered_box(cx, cy);
    observations.push_back(std::move(obs));
  }

  Trace trace{TraceHeader{scenario.sequence_id, n, kFeatureDim,
                          FeatureVector(tmpl), *observations.front().gt,
                          scenario.frames},
              std::move(observations)};
  return trace;
}

}  // namespace hedgetrack
