#include "hedgetrack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hedgetrack {

BoundingBox::BoundingBox(double x, double y, double w, double h)
    : x(x), y(y), w(w), h(h) {
  if (!(std::isfinite(x) && std::isfinite(y) && std::isfinite(w) &&
        std::isfinite(h))) {
    throw std::invalid_argument("BoundingBox: fields must be finite");
  }
  if (!(w > 0.0 && h > 0.0)) {
    throw std::invalid_argument("BoundingBox: width and height must be > 0");
  }
}

FeatureVector::FeatureVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("FeatureVector: empty");
  }
  double sq = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("FeatureVector: non-finite component");
    }
    sq += v * v;
  }
  norm_ = std::sqrt(sq);
  if (norm_ == 0.0) {
    throw std::invalid_argument("FeatureVector: zero norm");
  }
}

namespace {

double intersection_area(const BoundingBox& a, const BoundingBox& b) {
  const double iw =
      std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double ih =
      std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  return iw * ih;
}

}  // namespace

double iou(const BoundingBox& a, const BoundingBox& b) {
  if (a == b) return 1.0;  // exact on identical rectangles
  const double inter = intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double giou(const BoundingBox& a, const BoundingBox& b) {
  if (a == b) return 1.0;
  const double inter = intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  const double ew = std::max(a.right(), b.right()) - std::min(a.x, b.x);
  const double eh = std::max(a.bottom(), b.bottom()) - std::min(a.y, b.y);
  const double enclosing = ew * eh;
  // The enclosing box covers the union, so the penalty is >= 0; rounding can
  // push the union area a last-place digit past |C|, hence the max.
  const double penalty = std::max(0.0, (enclosing - uni) / enclosing);
  return std::clamp(inter / uni - penalty, -1.0, 1.0);
}

double proximity(const BoundingBox& a, const BoundingBox& b) {
  return (giou(a, b) + 1.0) / 2.0;
}

double loss(const BoundingBox& f, const BoundingBox& y) {
  return 1.0 - proximity(f, y);
}

double center_distance(const BoundingBox& a, const BoundingBox& b) {
  return std::hypot(a.center_x() - b.center_x(), a.center_y() - b.center_y());
}

double normalized_cosine(const FeatureVector& u, const FeatureVector& v) {
  if (u.dim() != v.dim()) {
    throw std::invalid_argument("normalized_cosine: dimension mismatch (" +
                                std::to_string(u.dim()) + " vs " +
                                std::to_string(v.dim()) + ")");
  }
  const double dot = std::inner_product(u.values().begin(), u.values().end(),
                                        v.values().begin(), 0.0);
  const double cos = std::clamp(dot / (u.norm() * v.norm()), -1.0, 1.0);
  return (1.0 + cos) / 2.0;
}

}  // namespace hedgetrack
