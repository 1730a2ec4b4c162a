#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hedgetrack/feedback.hpp"
#include "hedgetrack/hedge.hpp"
#include "hedgetrack/trace.hpp"

namespace hedgetrack {

enum class DecisionMode { anchor, sampled };

// The prediction emitted for one frame, with the weights left in force
// after the step.
struct FrameDecision {
  std::uint64_t frame;
  BoundingBox prediction;
  DecisionMode mode;
  std::optional<std::size_t> chosen_expert;  // sampled frames only
  WeightVector weights_after;
};

struct EngineEvent {
  std::uint64_t frame;
  std::string kind;  // "anchor", "budget_doubled", "weights_reset"
  double value;      // similarity / new eta / 0
};

struct StepResult {
  FrameDecision decision;
  // Present on anchor frames: the delayed feedback for every frame since
  // the previous anchor, and the per-expert segment losses it produced.
  std::optional<FeedbackSegment> feedback;
  std::optional<SegmentLosses> losses;
};

struct AggregatorConfig {
  BoundingBox initial_box;
  FeatureVector tmpl;
  std::size_t n_experts;
  double theta;
  std::uint64_t seed;
};

// Online aggregation over N expert trackers. Frame 1 is the first anchor by
// fiat with prediction initial_box; from frame 2 on, each observation either
// fires an anchor (delayed feedback, learning-rate tick, weight update,
// prediction pinned to the anchor box) or samples an expert under the
// current weights. One instance per sequence; not safe for concurrent
// mutation.
class Aggregator {
 public:
  explicit Aggregator(const AggregatorConfig& config);

  // Processes the observation for frame t = current frame + 1.
  StepResult step(const FrameObservation& obs);

  std::uint64_t frame() const { return t_; }
  const WeightVector& weights() const { return weights_; }
  const LearningRateState& learning_rate() const { return lr_; }
  const std::vector<AnchorRecord>& anchors() const { return anchors_; }
  const std::vector<EngineEvent>& events() const { return events_; }

 private:
  AggregatorConfig config_;
  WeightVector weights_;
  LearningRateState lr_;
  std::vector<AnchorRecord> anchors_;
  std::vector<EngineEvent> events_;
  std::mt19937_64 rng_;
  std::uint64_t t_;
  std::uint64_t closed_delay_ = 0;  // sum of g(g+1)/2 over closed anchor gaps

  // Buffered observations covering (last anchor, t].
  std::vector<std::vector<BoundingBox>> pending_boxes_;
  std::vector<std::vector<FeatureVector>> pending_features_;

  // The node the next offline path starts from: the aggregator's box at the
  // last anchor and the feature it carried (the template for the fiat
  // first anchor).
  BoundingBox segment_start_box_;
  FeatureVector segment_start_feature_;
};

struct RunConfig {
  double theta;
  std::uint64_t seed;
  std::string loss_mode = "expected";  // "expected" | "sampled"
};

// Everything a run produces: per-frame decisions, anchor history, events,
// and the pseudo-ground-truth for frames 1..last anchor.
struct RunResult {
  RunConfig config;
  std::string sequence_id;
  std::size_t n_experts;
  std::vector<FrameDecision> decisions;
  std::vector<AnchorRecord> anchors;
  std::vector<EngineEvent> events;
  std::vector<std::optional<BoundingBox>> feedback;  // index frame-1
};

// Folds Aggregator::step over the trace. Strictly online: the decision for
// frame t depends only on observations up to t. The frame-1 observation is
// consumed by initialization (its boxes never influence the prediction,
// which is fixed to initial_box).
RunResult run(const Trace& trace, const RunConfig& config);

}  // namespace hedgetrack
