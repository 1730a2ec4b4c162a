#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hedgetrack/geometry.hpp"

namespace hedgetrack {

// One frame's expert predictions plus per-expert feature vectors and
// optional ground truth.
struct FrameObservation {
  std::uint64_t frame = 0;  // 1-based, contiguous
  std::vector<BoundingBox> boxes;
  std::vector<FeatureVector> features;
  std::optional<BoundingBox> gt;
};

struct TraceHeader {
  std::string sequence_id;
  std::size_t n_experts = 0;
  std::size_t feature_dim = 0;
  FeatureVector tmpl;        // template feature vector
  BoundingBox initial_box;   // f_0, the given target location at frame 1
  std::optional<std::uint64_t> frames;  // total length when known up front
};

struct Trace {
  TraceHeader header;
  std::vector<FrameObservation> observations;
};

// Parse or validation failure, carrying the 1-based line number of the
// offending record (0 when not line-specific).
class TraceError : public std::runtime_error {
 public:
  TraceError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Line-delimited trace format: one JSON header line, then one JSON record
// per frame. Loads eagerly and fails hard on the first malformed record.
Trace load_trace(const std::string& path);
Trace read_trace(std::istream& in, const std::string& origin = "<stream>");

void save_trace(const Trace& trace, const std::string& path);
void write_trace(const Trace& trace, std::ostream& out);

}  // namespace hedgetrack
