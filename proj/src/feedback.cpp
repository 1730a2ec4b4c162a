#include "hedgetrack/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hedgetrack {

namespace {
constexpr double kCostClamp = 1e-12;
}

std::optional<AnchorMatch> detect_anchor(
    std::span<const FeatureVector> expert_features, const FeatureVector& tmpl,
    double theta) {
  if (expert_features.empty()) {
    throw std::invalid_argument("detect_anchor: no experts");
  }
  std::size_t best = 0;
  double best_sim = -1.0;
  for (std::size_t i = 0; i < expert_features.size(); ++i) {
    const double sim = normalized_cosine(expert_features[i], tmpl);
    if (sim > best_sim) {
      best_sim = sim;
      best = i;
    }
  }
  if (best_sim > theta) {
    return AnchorMatch{best, best_sim};
  }
  return std::nullopt;
}

double edge_cost(const BoundingBox& prev, const FeatureVector& prev_feat,
                 const BoundingBox& next, const FeatureVector& next_feat,
                 const FeatureVector& tmpl) {
  const double product = proximity(prev, next) *
                         normalized_cosine(prev_feat, next_feat) *
                         normalized_cosine(next_feat, tmpl);
  return -std::log(std::clamp(product, kCostClamp, 1.0));
}

OfflinePath offline_path(const BoundingBox& start_box,
                         const FeatureVector& start_feature,
                         std::span<const std::vector<BoundingBox>> boxes,
                         std::span<const std::vector<FeatureVector>> features,
                         std::uint64_t start_frame, std::size_t anchor_expert,
                         const FeatureVector& tmpl) {
  const std::size_t len = boxes.size();
  if (len == 0 || features.size() != len) {
    throw std::invalid_argument("offline_path: empty or misaligned segment");
  }
  const std::size_t n = boxes.front().size();
  for (std::size_t k = 0; k < len; ++k) {
    if (boxes[k].size() != n || features[k].size() != n) {
      throw std::invalid_argument("offline_path: expert count varies");
    }
  }
  if (anchor_expert >= n) {
    throw std::invalid_argument("offline_path: anchor expert out of range");
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();

  // suffix[k][i]: minimum cost from expert i at segment frame k to the anchor
  // node, with the last frame restricted to the anchor expert.
  std::vector<std::vector<double>> suffix(len, std::vector<double>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) {
    suffix[len - 1][i] = (i == anchor_expert) ? 0.0 : kInf;
  }
  for (std::size_t k = len - 1; k-- > 0;) {
    for (std::size_t i = 0; i < n; ++i) {
      double best = kInf;
      for (std::size_t j = 0; j < n; ++j) {
        if (suffix[k + 1][j] == kInf) continue;
        const double c = edge_cost(boxes[k][i], features[k][i],
                                   boxes[k + 1][j], features[k + 1][j], tmpl) +
                         suffix[k + 1][j];
        if (c < best) best = c;
      }
      suffix[k][i] = best;
    }
  }

  // Forward walk, picking at each frame the smallest expert index that
  // achieves the remaining minimum; this yields the lexicographically
  // smallest minimum-cost path.
  OfflinePath out;
  out.expert_path.reserve(len);
  out.segment.start = start_frame;
  out.segment.end = start_frame + len - 1;
  out.segment.boxes.reserve(len);

  const BoundingBox* cur_box = &start_box;
  const FeatureVector* cur_feat = &start_feature;
  double total = kInf;
  for (std::size_t k = 0; k < len; ++k) {
    std::size_t chosen = n;
    double best = kInf;
    for (std::size_t j = 0; j < n; ++j) {
      if (suffix[k][j] == kInf) continue;
      const double c =
          edge_cost(*cur_box, *cur_feat, boxes[k][j], features[k][j], tmpl) +
          suffix[k][j];
      if (c < best) {
        best = c;
        chosen = j;
      }
    }
    if (chosen == n) {
      throw std::logic_error("offline_path: no reachable node");
    }
    if (k == 0) total = best;
    out.expert_path.push_back(chosen);
    out.segment.boxes.push_back(boxes[k][chosen]);
    cur_box = &boxes[k][chosen];
    cur_feat = &features[k][chosen];
  }
  out.cost = total;
  return out;
}

}  // namespace hedgetrack
