#include "hedgetrack/engine.hpp"

#include <stdexcept>
#include <string>

namespace hedgetrack {

Aggregator::Aggregator(const AggregatorConfig& config)
    : config_(config),
      weights_(init_weights(config.n_experts)),
      lr_(config.n_experts),
      rng_(config.seed),
      t_(1),
      segment_start_box_(config.initial_box),
      segment_start_feature_(config.tmpl) {
  if (!(config.theta > 0.0 && config.theta < 1.0)) {
    throw std::invalid_argument("Aggregator: theta must be in (0,1)");
  }
  anchors_.push_back(
      AnchorRecord{1, 1, config.initial_box, std::nullopt, 1.0});
}

StepResult Aggregator::step(const FrameObservation& obs) {
  if (obs.frame != t_ + 1) {
    throw std::invalid_argument(
        "Aggregator::step: frame discontinuity (expected " +
        std::to_string(t_ + 1) + ", got " + std::to_string(obs.frame) + ")");
  }
  if (obs.boxes.size() != config_.n_experts ||
      obs.features.size() != config_.n_experts) {
    throw std::invalid_argument("Aggregator::step: expert count mismatch");
  }
  t_ = obs.frame;
  pending_boxes_.push_back(obs.boxes);
  pending_features_.push_back(obs.features);

  const auto match = detect_anchor(obs.features, config_.tmpl, config_.theta);
  if (!match) {
    const std::size_t chosen = select_expert(weights_, rng_);
    return StepResult{
        FrameDecision{t_, obs.boxes[chosen], DecisionMode::sampled, chosen,
                      weights_},
        std::nullopt, std::nullopt};
  }

  const BoundingBox anchor_box = obs.boxes[match->expert];
  const std::uint64_t prev_frame = anchors_.back().frame;
  anchors_.push_back(AnchorRecord{anchors_.back().q + 1, t_, anchor_box,
                                  match->expert, match->similarity});
  events_.push_back(EngineEvent{t_, "anchor", match->similarity});

  OfflinePath path =
      offline_path(segment_start_box_, segment_start_feature_, pending_boxes_,
                   pending_features_, prev_frame + 1, match->expert,
                   config_.tmpl);
  SegmentLosses losses =
      segment_losses(pending_boxes_, path.segment.boxes);

  // D_t at an anchor frame is the closed total delay: gaps up to and
  // including the one just closed, with no partial term left over.
  const std::uint64_t gap = t_ - prev_frame;
  closed_delay_ += gap * (gap + 1) / 2;
  const std::uint64_t budget_before = lr_.budget;
  lr_ = doubling_tick(lr_, t_, closed_delay_);
  if (lr_.budget != budget_before) {
    events_.push_back(EngineEvent{t_, "budget_doubled", lr_.eta});
  }

  bool reset = false;
  weights_ = update_weights(weights_, losses, lr_.eta, &reset);
  if (reset) {
    events_.push_back(EngineEvent{t_, "weights_reset", 0.0});
  }

  pending_boxes_.clear();
  pending_features_.clear();
  segment_start_box_ = anchor_box;
  segment_start_feature_ = obs.features[match->expert];

  return StepResult{
      FrameDecision{t_, anchor_box, DecisionMode::anchor, std::nullopt,
                    weights_},
      std::move(path.segment), std::move(losses)};
}

RunResult run(const Trace& trace, const RunConfig& config) {
  if (trace.observations.empty() || trace.observations.front().frame != 1) {
    throw std::invalid_argument("run: trace must start at frame 1");
  }
  Aggregator agg(AggregatorConfig{trace.header.initial_box, trace.header.tmpl,
                                  trace.header.n_experts, config.theta,
                                  config.seed});

  RunResult result{config,
                   trace.header.sequence_id,
                   trace.header.n_experts,
                   {},
                   {},
                   {},
                   {}};
  result.decisions.reserve(trace.observations.size());
  result.feedback.resize(trace.observations.size());

  // Frame 1 is the fiat anchor: prediction is the given initial box and its
  // pseudo-ground-truth is that same box.
  result.decisions.push_back(FrameDecision{1, trace.header.initial_box,
                                           DecisionMode::anchor, std::nullopt,
                                           agg.weights()});
  result.feedback[0] = trace.header.initial_box;

  for (std::size_t k = 1; k < trace.observations.size(); ++k) {
    StepResult step = agg.step(trace.observations[k]);
    result.decisions.push_back(std::move(step.decision));
    if (step.feedback) {
      for (std::size_t j = 0; j < step.feedback->boxes.size(); ++j) {
        result.feedback[step.feedback->start - 1 + j] =
            step.feedback->boxes[j];
      }
    }
  }
  result.anchors = agg.anchors();
  result.events = agg.events();
  return result;
}

}  // namespace hedgetrack
