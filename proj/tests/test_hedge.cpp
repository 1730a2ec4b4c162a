#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "hedgetrack/hedge.hpp"
#include "hedgetrack/rng.hpp"
#include "oracles.hpp"

using namespace hedgetrack;

TEST_CASE("init_weights is uniform and rejects n < 2") {
  const WeightVector w4 = init_weights(4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(w4[i] == doctest::Approx(0.25));
  const WeightVector w2 = init_weights(2);
  CHECK(w2[0] == doctest::Approx(0.5));
  CHECK_THROWS_AS(init_weights(1), std::invalid_argument);
  CHECK_THROWS_AS(init_weights(0), std::invalid_argument);
}

TEST_CASE("weight vector validates the simplex") {
  CHECK_THROWS_AS(WeightVector({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(WeightVector({-0.1, 1.1}), std::invalid_argument);
  CHECK_THROWS_AS(WeightVector({1.0}), std::invalid_argument);
  CHECK_NOTHROW(WeightVector({0.25, 0.75}));
}

TEST_CASE("segment losses sum per-frame losses per expert") {
  const BoundingBox a(0, 0, 2, 2);
  const BoundingBox b(1, 1, 2, 2);
  const BoundingBox c(0, 0, 1, 1);
  const BoundingBox d(2, 0, 1, 1);

  SUBCASE("zero loss when every expert equals feedback") {
    std::vector<std::vector<BoundingBox>> preds{{a, a}, {b, b}};
    std::vector<BoundingBox> fb{a, b};
    const SegmentLosses losses = segment_losses(preds, fb);
    CHECK(losses[0] == 0.0);
    CHECK(losses[1] == 0.0);
  }
  SUBCASE("one-frame segment reproduces the single-frame loss") {
    std::vector<std::vector<BoundingBox>> preds{{a, b}};
    std::vector<BoundingBox> fb{a};
    const SegmentLosses losses = segment_losses(preds, fb);
    CHECK(losses[0] == 0.0);
    CHECK(losses[1] == doctest::Approx(34.0 / 63.0).epsilon(1e-12));
  }
  SUBCASE("three-frame segment accumulates") {
    // Expert 0 matches feedback on two frames and is the gap-separated box
    // (loss 2/3) on the third.
    std::vector<std::vector<BoundingBox>> preds{{a, b}, {a, b}, {d, b}};
    std::vector<BoundingBox> fb{a, a, c};
    const SegmentLosses losses = segment_losses(preds, fb);
    CHECK(losses[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("misalignment throws") {
    std::vector<std::vector<BoundingBox>> preds{{a, b}};
    std::vector<BoundingBox> fb{a, b};
    CHECK_THROWS_AS(segment_losses(preds, fb), std::invalid_argument);
  }
}

TEST_CASE("update hand values") {
  SUBCASE("equal losses leave weights unchanged") {
    const WeightVector w({0.3, 0.7});
    const WeightVector next = update_weights(w, {2.5, 2.5}, 0.9);
    CHECK(next[0] == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(next[1] == doctest::Approx(0.7).epsilon(1e-14));
  }
  SUBCASE("direct substitution") {
    const WeightVector next =
        update_weights(WeightVector({0.5, 0.5}), {0.0, 1.0}, std::log(2.0));
    CHECK(next[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(next[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }
  SUBCASE("zero losses") {
    const WeightVector w = init_weights(3);
    const WeightVector next = update_weights(w, {0, 0, 0}, 1.0);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(next[i] == doctest::Approx(w[i]).epsilon(1e-14));
  }
}

TEST_CASE("update matches the direct-exponentiation oracle") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 2000; ++it) {
    const std::size_t n = 2 + rng() % 6;
    std::vector<double> raw(n);
    double total = 0.0;
    for (auto& w : raw) {
      w = uniform_in(rng, 1e-6, 1.0);
      total += w;
    }
    for (auto& w : raw) w /= total;
    const double eta = uniform_in(rng, 0.01, 3.0);
    SegmentLosses losses(n);
    for (auto& l : losses) l = uniform_in(rng, 0.0, 30.0 / eta);

    const WeightVector w(raw);
    const WeightVector next = update_weights(w, losses, eta);
    const std::vector<double> expect =
        oracles::hedge_update_oracle(raw, losses, eta);

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(next[i] == doctest::Approx(expect[i]).epsilon(1e-12));
      CHECK(next[i] >= 0.0);
      sum += next[i];
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("update preserves order and scales consistently") {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 1000; ++it) {
    const std::size_t n = 2 + rng() % 5;
    std::vector<double> raw(n);
    double total = 0.0;
    for (auto& w : raw) {
      w = uniform_in(rng, 0.01, 1.0);
      total += w;
    }
    for (auto& w : raw) w /= total;
    SegmentLosses losses(n);
    for (auto& l : losses) l = uniform_in(rng, 0.0, 5.0);
    const double eta = uniform_in(rng, 0.05, 2.0);

    const WeightVector w(raw);
    const WeightVector next = update_weights(w, losses, eta);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (losses[i] < losses[j]) {
          CHECK(next[i] / w[i] > next[j] / w[j]);
        }
      }
    }

    const double c = uniform_in(rng, 0.5, 4.0);
    SegmentLosses scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = c * losses[i];
    const WeightVector via_scaled = update_weights(w, scaled, eta / c);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(via_scaled[i] == doctest::Approx(next[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("update survives extreme losses without underflowing to zero") {
  WeightVector w = init_weights(4);
  for (int round = 0; round < 400; ++round) {
    w = update_weights(w, {0.0, 50.0, 50.0, 50.0}, 1.0);
  }
  CHECK(w[0] == doctest::Approx(1.0));
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) sum += w[i];
  CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("doubling tick follows the budget rule") {
  LearningRateState state(2);
  CHECK(state.budget == 1);
  CHECK(state.eta == doctest::Approx(std::sqrt(std::log(2.0))));

  SUBCASE("t + delay reaching the budget doubles it") {
    const LearningRateState next = doubling_tick(state, 1, 0);
    CHECK(next.budget == 2);
    CHECK(next.eta == doctest::Approx(std::sqrt(std::log(2.0) / 2.0)));
  }
  SUBCASE("single doubling when one step suffices") {
    state.budget = 4;
    const LearningRateState next = doubling_tick(state, 3, 4);
    CHECK(next.budget == 8);
  }
  SUBCASE("below budget leaves Z unchanged") {
    state.budget = 8;
    state.eta = std::sqrt(std::log(2.0) / 8.0);
    const LearningRateState next = doubling_tick(state, 2, 1);
    CHECK(next.budget == 8);
    CHECK(next.eta == doctest::Approx(state.eta));
  }
}

TEST_CASE("eta is non-increasing and Z stays a power of two across a run") {
  std::mt19937_64 rng(31);
  LearningRateState state(5);
  double prev_eta = state.eta;
  std::uint64_t t = 0;
  std::uint64_t delay = 0;
  for (int step = 0; step < 200; ++step) {
    t += 1 + rng() % 50;
    delay += rng() % 500;
    state = doubling_tick(state, t, delay);
    CHECK(state.eta <= prev_eta);
    CHECK((state.budget & (state.budget - 1)) == 0);
    CHECK(state.consumed < state.budget);
    prev_eta = state.eta;
  }
}

TEST_CASE("select_expert is deterministic, respects point masses and ties") {
  std::mt19937_64 rng(37);
  const WeightVector point({1.0, 0.0, 0.0});
  for (int it = 0; it < 100; ++it) CHECK(select_expert(point, rng) == 0);

  const WeightVector with_hole({0.5, 0.0, 0.5});
  for (int it = 0; it < 2000; ++it) {
    CHECK(select_expert(with_hole, rng) != 1);
  }

  std::mt19937_64 a(99), b(99);
  const WeightVector w({0.2, 0.3, 0.5});
  for (int it = 0; it < 100; ++it) {
    CHECK(select_expert(w, a) == select_expert(w, b));
  }
}

TEST_CASE("select_expert frequencies concentrate") {
  std::mt19937_64 rng(41);
  const WeightVector w({0.5, 0.5});
  int zeros = 0;
  const int draws = 1000000;
  for (int it = 0; it < draws; ++it) {
    if (select_expert(w, rng) == 0) ++zeros;
  }
  const double freq = static_cast<double>(zeros) / draws;
  CHECK(freq > 0.497);
  CHECK(freq < 0.503);
}

TEST_CASE("expected step loss is the dot product") {
  CHECK(expected_step_loss(WeightVector({1.0, 0.0}),
                           std::vector<double>{0.3, 0.9}) ==
        doctest::Approx(0.3));
  CHECK(expected_step_loss(WeightVector({0.5, 0.5}),
                           std::vector<double>{0.0, 1.0}) ==
        doctest::Approx(0.5));
  CHECK(expected_step_loss(WeightVector({0.25, 0.75}),
                           std::vector<double>{0.2, 0.6}) ==
        doctest::Approx(0.5));
  CHECK_THROWS_AS(expected_step_loss(WeightVector({0.5, 0.5}),
                                     std::vector<double>{0.1}),
                  std::invalid_argument);
}

TEST_CASE("sampled losses converge to the expectation") {
  const WeightVector w({0.15, 0.25, 0.6});
  const std::vector<double> frame_losses{0.9, 0.4, 0.1};
  const double expectation = expected_step_loss(w, frame_losses);

  std::mt19937_64 rng(43);
  const int draws = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int it = 0; it < draws; ++it) {
    const double sample = frame_losses[select_expert(w, rng)];
    sum += sample;
    sum_sq += sample * sample;
  }
  const double mean = sum / draws;
  const double variance = sum_sq / draws - mean * mean;
  const double stderr3 = 3.0 * std::sqrt(variance / draws);
  CHECK(std::abs(mean - expectation) < stderr3);
}
