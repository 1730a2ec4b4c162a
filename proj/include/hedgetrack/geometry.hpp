#pragma once

#include <cstddef>
#include <vector>

namespace hedgetrack {

// Axis-aligned rectangle in continuous pixel coordinates, stored as
// (left, top, width, height). Area is w*h with no +1 pixel convention.
// Degenerate (non-positive or non-finite) boxes are construction errors.
struct BoundingBox {
  double x;
  double y;
  double w;
  double h;

  BoundingBox(double x, double y, double w, double h);

  double right() const { return x + w; }
  double bottom() const { return y + h; }
  double area() const { return w * h; }
  double center_x() const { return x + w / 2.0; }
  double center_y() const { return y + h / 2.0; }

  bool operator==(const BoundingBox& other) const = default;
};

// Fixed-dimension feature vector with non-zero Euclidean norm.
class FeatureVector {
 public:
  explicit FeatureVector(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t dim() const { return values_.size(); }
  double norm() const { return norm_; }

  bool operator==(const FeatureVector& other) const {
    return values_ == other.values_;
  }

 private:
  std::vector<double> values_;
  double norm_;
};

// Intersection-over-union in [0,1]; 0 when disjoint.
double iou(const BoundingBox& a, const BoundingBox& b);

// Generalized IoU in (-1,1]: iou minus the enclosing-box penalty
// (|C| - |A u B|) / |C|, C the smallest enclosing axis-aligned box.
double giou(const BoundingBox& a, const BoundingBox& b);

// (giou + 1) / 2, rescaled into [0,1] so the per-frame loss stays in [0,1].
double proximity(const BoundingBox& a, const BoundingBox& b);

// Per-frame loss 1 - proximity(f, y), in [0,1]. Zero iff f == y.
double loss(const BoundingBox& f, const BoundingBox& y);

// Euclidean distance between box centers, in pixels.
double center_distance(const BoundingBox& a, const BoundingBox& b);

// (1 + cos(u,v)) / 2, in [0,1]. Throws on dimension mismatch.
double normalized_cosine(const FeatureVector& u, const FeatureVector& v);

}  // namespace hedgetrack
