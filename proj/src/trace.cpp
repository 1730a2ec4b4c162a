#include "hedgetrack/trace.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hedgetrack {

namespace {

using nlohmann::json;

constexpr const char* kTraceSchema = "hedgetrack-trace-v1";

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw TraceError(line, msg);
}

json parse_line(const std::string& text, std::size_t line) {
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded() || !value.is_object()) {
    fail(line, "malformed JSON record");
  }
  return value;
}

BoundingBox parse_box(const json& value, std::size_t line,
                      const char* field) {
  if (!value.is_array() || value.size() != 4) {
    fail(line, std::string(field) + " must be [x, y, w, h]");
  }
  try {
    return BoundingBox(value[0].get<double>(), value[1].get<double>(),
                       value[2].get<double>(), value[3].get<double>());
  } catch (const std::exception& e) {
    fail(line, std::string(field) + ": " + e.what());
  }
}

FeatureVector parse_feature(const json& value, std::size_t line,
                            std::size_t dim, const char* field) {
  if (!value.is_array()) {
    fail(line, std::string(field) + " must be an array");
  }
  std::vector<double> parsed;
  parsed.reserve(value.size());
  for (const auto& v : value) parsed.push_back(v.get<double>());
  if (parsed.size() != dim) {
    fail(line, std::string(field) + " has wrong dimension");
  }
  try {
    return FeatureVector(std::move(parsed));
  } catch (const std::exception& e) {
    fail(line, std::string(field) + ": " + e.what());
  }
}

json box_to_json(const BoundingBox& b) {
  return json::array({b.x, b.y, b.w, b.h});
}

}  // namespace

TraceError::TraceError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? what + " at line " + std::to_string(line)
                                  : what),
      line_(line) {}

Trace read_trace(std::istream& in, const std::string& origin) {
  std::string text;
  if (!std::getline(in, text)) {
    fail(1, origin + ": missing header line");
  }
  const json head = parse_line(text, 1);
  if (head.value("schema", "") != kTraceSchema) {
    fail(1, "unknown trace schema");
  }
  for (const char* key :
       {"sequence_id", "n_experts", "feature_dim", "template", "initial_box"}) {
    if (!head.contains(key)) fail(1, std::string("header missing ") + key);
  }

  const std::size_t n = head["n_experts"].get<std::size_t>();
  const std::size_t dim = head["feature_dim"].get<std::size_t>();
  if (n < 2) fail(1, "n_experts must be >= 2");
  if (dim < 1) fail(1, "feature_dim must be >= 1");

  Trace trace{
      TraceHeader{head["sequence_id"].get<std::string>(), n, dim,
                  parse_feature(head["template"], 1, dim, "template"),
                  parse_box(head["initial_box"], 1, "initial_box"),
                  std::nullopt},
      {}};
  if (head.contains("frames")) {
    trace.header.frames = head["frames"].get<std::uint64_t>();
  }
  if (trace.header.frames) {
    trace.observations.reserve(*trace.header.frames);
  }

  std::size_t line = 1;
  std::uint64_t expected_frame = 1;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    const json rec = parse_line(text, line);
    if (!rec.contains("frame")) fail(line, "record missing frame index");
    const std::uint64_t frame = rec["frame"].get<std::uint64_t>();
    if (frame != expected_frame) {
      fail(line, "non-contiguous frame index (expected " +
                     std::to_string(expected_frame) + ", got " +
                     std::to_string(frame) + ")");
    }
    FrameObservation obs;
    obs.frame = frame;
    const json& boxes = rec.at("boxes");
    const json& feats = rec.at("features");
    if (!boxes.is_array() || boxes.size() != n) {
      fail(line, "expected " + std::to_string(n) + " boxes");
    }
    if (!feats.is_array() || feats.size() != n) {
      fail(line, "expected " + std::to_string(n) + " features");
    }
    obs.boxes.reserve(n);
    obs.features.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      obs.boxes.push_back(parse_box(boxes[i], line, "box"));
      obs.features.push_back(parse_feature(feats[i], line, dim, "feature"));
    }
    if (rec.contains("gt") && !rec["gt"].is_null()) {
      obs.gt = parse_box(rec["gt"], line, "gt");
    }
    trace.observations.push_back(std::move(obs));
    ++expected_frame;
  }
  if (trace.observations.empty()) {
    fail(line + 1, "trace has no frames");
  }
  if (trace.header.frames &&
      *trace.header.frames != trace.observations.size()) {
    fail(line, "header frame count does not match records");
  }
  return trace;
}

Trace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw TraceError(0, "cannot open trace file: " + path);
  }
  return read_trace(in, path);
}

void write_trace(const Trace& trace, std::ostream& out) {
  json head{{"schema", kTraceSchema},
            {"sequence_id", trace.header.sequence_id},
            {"n_experts", trace.header.n_experts},
            {"feature_dim", trace.header.feature_dim},
            {"template", trace.header.tmpl.values()},
            {"initial_box", box_to_json(trace.header.initial_box)}};
  if (trace.header.frames) head["frames"] = *trace.header.frames;
  out << head.dump() << '\n';
  for (const auto& obs : trace.observations) {
    json rec{{"frame", obs.frame}};
    json boxes = json::array();
    json feats = json::array();
    for (const auto& b : obs.boxes) boxes.push_back(box_to_json(b));
    for (const auto& f : obs.features) feats.push_back(f.values());
    rec["boxes"] = std::move(boxes);
    rec["features"] = std::move(feats);
    if (obs.gt) rec["gt"] = box_to_json(*obs.gt);
    out << rec.dump() << '\n';
  }
}

void save_trace(const Trace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw TraceError(0, "cannot open trace file for writing: " + path);
  }
  write_trace(trace, out);
  out.flush();
  if (!out) {
    throw TraceError(0, "failed writing trace file: " + path);
  }
}

}  // namespace hedgetrack
