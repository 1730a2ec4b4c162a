// Independent reference implementations used only by tests. Each oracle
// recomputes its quantity by the most literal route available (cell
// counting, direct exponentiation, exhaustive enumeration, per-frame
// recount) so it shares no code path with the library internals it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "hedgetrack/feedback.hpp"
#include "hedgetrack/geometry.hpp"

namespace oracles {

struct IntBox {
  long long x, y, w, h;
};

inline bool cell_inside(const IntBox& b, long long cx, long long cy) {
  return cx >= b.x && cx < b.x + b.w && cy >= b.y && cy < b.y + b.h;
}

struct RasterAreas {
  long long inter = 0;
  long long uni = 0;
  long long enclosing = 0;
};

// Counts unit cells over the enclosing region of two integer boxes.
inline RasterAreas rasterize(const IntBox& a, const IntBox& b) {
  const long long x0 = std::min(a.x, b.x);
  const long long y0 = std::min(a.y, b.y);
  const long long x1 = std::max(a.x + a.w, b.x + b.w);
  const long long y1 = std::max(a.y + a.h, b.y + b.h);
  RasterAreas areas;
  areas.enclosing = (x1 - x0) * (y1 - y0);
  for (long long cx = x0; cx < x1; ++cx) {
    for (long long cy = y0; cy < y1; ++cy) {
      const bool in_a = cell_inside(a, cx, cy);
      const bool in_b = cell_inside(b, cx, cy);
      if (in_a && in_b) ++areas.inter;
      if (in_a || in_b) ++areas.uni;
    }
  }
  return areas;
}

inline double iou_oracle(const IntBox& a, const IntBox& b) {
  const RasterAreas areas = rasterize(a, b);
  return static_cast<double>(areas.inter) / static_cast<double>(areas.uni);
}

inline double giou_oracle(const IntBox& a, const IntBox& b) {
  const RasterAreas areas = rasterize(a, b);
  return static_cast<double>(areas.inter) / static_cast<double>(areas.uni) -
         static_cast<double>(areas.enclosing - areas.uni) /
             static_cast<double>(areas.enclosing);
}

// Direct evaluation of the exponential weight update, no log-space tricks.
inline std::vector<double> hedge_update_oracle(std::span<const double> weights,
                                               std::span<const double> losses,
                                               double eta) {
  std::vector<double> next(weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    next[i] = weights[i] * std::exp(-eta * losses[i]);
    total += next[i];
  }
  for (auto& w : next) w /= total;
  return next;
}

struct BrutePath {
  std::vector<std::size_t> experts;
  double cost = std::numeric_limits<double>::infinity();
};

// Exhaustive enumeration over all expert assignments for a segment, the
// last frame pinned to the anchor expert. Costs accumulate right-to-left,
// matching the suffix order a layered shortest-path evaluation uses, so
// ties are exact. Lexicographically smallest path wins ties.
inline BrutePath brute_force_path(
    const hedgetrack::BoundingBox& start_box,
    const hedgetrack::FeatureVector& start_feature,
    std::span<const std::vector<hedgetrack::BoundingBox>> boxes,
    std::span<const std::vector<hedgetrack::FeatureVector>> features,
    std::size_t anchor_expert, const hedgetrack::FeatureVector& tmpl) {
  const std::size_t len = boxes.size();
  const std::size_t n = boxes.front().size();
  BrutePath best;

  std::vector<std::size_t> path(len, 0);
  path[len - 1] = anchor_expert;
  const std::size_t free_frames = len - 1;
  std::size_t combos = 1;
  for (std::size_t k = 0; k < free_frames; ++k) combos *= n;

  for (std::size_t mask = 0; mask < combos; ++mask) {
    std::size_t rest = mask;
    for (std::size_t k = 0; k < free_frames; ++k) {
      path[k] = rest % n;
      rest /= n;
    }
    double cost = 0.0;
    for (std::size_t k = len; k-- > 1;) {
      cost = hedgetrack::edge_cost(boxes[k - 1][path[k - 1]],
                                   features[k - 1][path[k - 1]],
                                   boxes[k][path[k]], features[k][path[k]],
                                   tmpl) +
             cost;
    }
    cost = hedgetrack::edge_cost(start_box, start_feature, boxes[0][path[0]],
                                 features[0][path[0]], tmpl) +
           cost;
    if (cost < best.cost ||
        (cost == best.cost && path < best.experts)) {
      best.cost = cost;
      best.experts = path;
    }
  }
  return best;
}

// Success-plot AUC by literal recount: for each of the 101 thresholds,
// walk every frame again.
inline double auc_oracle(std::span<const hedgetrack::BoundingBox> pred,
                         std::span<const hedgetrack::BoundingBox> gt) {
  double total = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double threshold = k / 100.0;
    std::size_t hits = 0;
    for (std::size_t f = 0; f < pred.size(); ++f) {
      if (hedgetrack::iou(pred[f], gt[f]) > threshold) ++hits;
    }
    total += static_cast<double>(hits) / static_cast<double>(pred.size());
  }
  return total / 101.0;
}

inline double dp_oracle(std::span<const hedgetrack::BoundingBox> pred,
                        std::span<const hedgetrack::BoundingBox> gt) {
  std::size_t hits = 0;
  for (std::size_t f = 0; f < pred.size(); ++f) {
    const double dx = (pred[f].x + pred[f].w / 2) - (gt[f].x + gt[f].w / 2);
    const double dy = (pred[f].y + pred[f].h / 2) - (gt[f].y + gt[f].h / 2);
    if (std::sqrt(dx * dx + dy * dy) <= 20.0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

}  // namespace oracles
