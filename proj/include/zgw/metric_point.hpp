#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "zgw/common.hpp"

namespace zgw {

enum class PointKind { Scalar, Vector, Matrix, Cone, Tuple, Empirical, Sampled, Label };

// A point in some target metric space. Tagged union; which fields are live
// depends on `kind`. Immutable by convention: build through the factories.
struct MetricPoint {
  PointKind kind = PointKind::Scalar;

  double scalar = 0.0;                      // Scalar
  std::vector<double> values;               // Vector / Matrix (row-major) / Empirical support / Sampled
  std::vector<double> weights;              // Empirical
  int dim = 0;                              // Matrix side length
  std::string label;                        // Label
  std::shared_ptr<const MetricPoint> base;  // Cone base point
  double radius = 0.0;                      // Cone radius
  std::vector<MetricPoint> parts;           // Tuple
};

inline MetricPoint scalar_point(double x) {
  MetricPoint p;
  p.kind = PointKind::Scalar;
  p.scalar = x;
  return p;
}

inline MetricPoint vector_point(std::vector<double> v) {
  MetricPoint p;
  p.kind = PointKind::Vector;
  p.values = std::move(v);
  return p;
}

inline MetricPoint matrix_point(int d, std::vector<double> row_major) {
  require(d >= 1, "matrix_point: dimension must be >= 1");
  require(static_cast<int>(row_major.size()) == d * d, "matrix_point: expected d*d entries");
  MetricPoint p;
  p.kind = PointKind::Matrix;
  p.dim = d;
  p.values = std::move(row_major);
  return p;
}

inline MetricPoint cone_point(MetricPoint base, double radius) {
  require(radius >= 0.0, "cone_point: radius must be >= 0");
  MetricPoint p;
  p.kind = PointKind::Cone;
  p.base = std::make_shared<const MetricPoint>(std::move(base));
  p.radius = radius;
  return p;
}

inline MetricPoint tuple_point(std::vector<MetricPoint> parts) {
  MetricPoint p;
  p.kind = PointKind::Tuple;
  p.parts = std::move(parts);
  return p;
}

// Sorts the support and merges exactly-tied atoms.
inline MetricPoint empirical_point(std::vector<double> support, std::vector<double> weights) {
  require(support.size() == weights.size(), "empirical_point: support/weights size mismatch");
  require(!support.empty(), "empirical_point: empty support");
  std::vector<int> idx(support.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return support[i] < support[j]; });
  MetricPoint p;
  p.kind = PointKind::Empirical;
  for (int i : idx) {
    require(weights[i] >= 0.0, "empirical_point: negative weight");
    if (!p.values.empty() && p.values.back() == support[i]) {
      p.weights.back() += weights[i];
    } else {
      p.values.push_back(support[i]);
      p.weights.push_back(weights[i]);
    }
  }
  double s = 0.0;
  for (double w : p.weights) s += w;
  require(std::abs(s - 1.0) <= 1e-12, "empirical_point: weights must sum to 1");
  return p;
}

inline MetricPoint sampled_point(std::vector<double> values) {
  MetricPoint p;
  p.kind = PointKind::Sampled;
  p.values = std::move(values);
  return p;
}

inline MetricPoint label_point(std::string s) {
  MetricPoint p;
  p.kind = PointKind::Label;
  p.label = std::move(s);
  return p;
}

// Structural equality, except that two cone points of radius zero compare
// equal regardless of base (the apex identification).
inline bool operator==(const MetricPoint& a, const MetricPoint& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case PointKind::Scalar:
      return a.scalar == b.scalar;
    case PointKind::Vector:
    case PointKind::Sampled:
      return a.values == b.values;
    case PointKind::Matrix:
      return a.dim == b.dim && a.values == b.values;
    case PointKind::Label:
      return a.label == b.label;
    case PointKind::Empirical:
      return a.values == b.values && a.weights == b.weights;
    case PointKind::Cone:
      if (a.radius == 0.0 && b.radius == 0.0) return true;
      return a.radius == b.radius && *a.base == *b.base;
    case PointKind::Tuple:
      if (a.parts.size() != b.parts.size()) return false;
      for (size_t i = 0; i < a.parts.size(); ++i)
        if (!(a.parts[i] == b.parts[i])) return false;
      return true;
  }
  return false;
}

inline bool operator!=(const MetricPoint& a, const MetricPoint& b) { return !(a == b); }

}  // namespace zgw
