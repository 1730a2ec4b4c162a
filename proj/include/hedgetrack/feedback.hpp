#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hedgetrack/geometry.hpp"

namespace hedgetrack {

// One confirmed anchor frame. q == 1 is the initial frame by fiat: it has no
// detecting expert and its similarity is recorded as 1.
struct AnchorRecord {
  std::size_t q;        // anchor ordinal, 1-based
  std::uint64_t frame;  // frame index u_q
  BoundingBox box;      // confirmed target location y^{u_q}
  std::optional<std::size_t> best_expert;
  double similarity;
};

// Pseudo-ground-truth boxes for the frames between two consecutive anchors,
// covering [start, end] with end the anchor frame. The last box always equals
// the anchor box.
struct FeedbackSegment {
  std::uint64_t start;
  std::uint64_t end;
  std::vector<BoundingBox> boxes;
};

// Result of detect_anchor: the max-similarity expert, before the caller
// assigns the anchor ordinal and frame index.
struct AnchorMatch {
  std::size_t expert;
  double similarity;
};

// Fires when some expert's normalized cosine similarity to the template is
// strictly greater than theta; returns the max-similarity expert (ties to
// the lowest index), or nullopt.
std::optional<AnchorMatch> detect_anchor(
    std::span<const FeatureVector> expert_features, const FeatureVector& tmpl,
    double theta);

// Transition cost -log(P * V_E * V_T) between consecutive path nodes, the
// product clamped to [1e-12, 1] so costs stay finite and non-negative.
// P is box proximity, V_E the feature similarity across the step, V_T the
// similarity of the arrival feature to the template.
double edge_cost(const BoundingBox& prev, const FeatureVector& prev_feat,
                 const BoundingBox& next, const FeatureVector& next_feat,
                 const FeatureVector& tmpl);

struct OfflinePath {
  FeedbackSegment segment;
  std::vector<std::size_t> expert_path;  // chosen expert per segment frame
  double cost;
};

// Minimum-total-cost path through one expert box per frame, from the fixed
// start node (the aggregator's box at the previous anchor) to the anchor
// expert's box at the last frame. boxes[k][i] / features[k][i] give expert
// i's prediction at segment frame k; the segment's frames are
// [start_frame, start_frame + len - 1] with the last one the anchor frame.
// Among equal-cost paths the lexicographically smallest expert sequence wins.
OfflinePath offline_path(const BoundingBox& start_box,
                         const FeatureVector& start_feature,
                         std::span<const std::vector<BoundingBox>> boxes,
                         std::span<const std::vector<FeatureVector>> features,
                         std::uint64_t start_frame, std::size_t anchor_expert,
                         const FeatureVector& tmpl);

}  // namespace hedgetrack
