#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "zgw/common.hpp"
#include "zgw/metric_point.hpp"

namespace zgw {

enum class SpaceKind {
  Real,
  LambdaInf,
  LambdaQ,
  EuclideanLr,
  WeightedProduct,
  Cone,
  Orthogonal,
  Empirical1D,
  SlackInterleaving,
  DampedSup,
  Discrete
};

// Closed description of a target metric space (Z, d_Z). Two descriptors are
// compatible for distance evaluation only if structurally equal.
struct MetricSpaceDescriptor {
  SpaceKind kind = SpaceKind::Real;

  double q = 1.0;                               // LambdaQ exponent / WeightedProduct mixing exponent
  double r = 2.0;                               // EuclideanLr exponent, may be inf
  int dim = 1;                                  // EuclideanLr n / Orthogonal d
  double wasserstein_order = 1.0;               // Empirical1D p_W
  double slack = 0.0;                           // SlackInterleaving lambda
  std::vector<double> grid;                     // SlackInterleaving / DampedSup sample grid
  std::vector<MetricSpaceDescriptor> factors;   // WeightedProduct subs; Cone base at [0]
  std::vector<double> factor_weights;           // WeightedProduct
  std::vector<std::string> alphabet;            // Discrete
};

inline bool operator==(const MetricSpaceDescriptor& a, const MetricSpaceDescriptor& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case SpaceKind::Real:
    case SpaceKind::LambdaInf:
      return true;
    case SpaceKind::LambdaQ:
      return a.q == b.q;
    case SpaceKind::EuclideanLr:
      return a.dim == b.dim && a.r == b.r;
    case SpaceKind::Orthogonal:
      return a.dim == b.dim;
    case SpaceKind::Empirical1D:
      return a.wasserstein_order == b.wasserstein_order;
    case SpaceKind::SlackInterleaving:
      return a.slack == b.slack && a.grid == b.grid;
    case SpaceKind::DampedSup:
      return a.grid == b.grid;
    case SpaceKind::Discrete:
      return a.alphabet == b.alphabet;
    case SpaceKind::Cone:
      return a.factors[0] == b.factors[0];
    case SpaceKind::WeightedProduct:
      if (a.q != b.q || a.factor_weights != b.factor_weights) return false;
      if (a.factors.size() != b.factors.size()) return false;
      for (size_t i = 0; i < a.factors.size(); ++i)
        if (!(a.factors[i] == b.factors[i])) return false;
      return true;
  }
  return false;
}

inline bool operator!=(const MetricSpaceDescriptor& a, const MetricSpaceDescriptor& b) {
  return !(a == b);
}

inline void validate_descriptor(const MetricSpaceDescriptor& d) {
  switch (d.kind) {
    case SpaceKind::Real:
    case SpaceKind::LambdaInf:
      break;
    case SpaceKind::LambdaQ:
      require(d.q >= 1.0 && std::isfinite(d.q), "LambdaQ: q must lie in [1, inf)");
      break;
    case SpaceKind::EuclideanLr:
      require(d.dim >= 1, "EuclideanLr: dimension must be >= 1");
      require(d.r >= 1.0, "EuclideanLr: exponent must lie in [1, inf]");
      break;
    case SpaceKind::WeightedProduct: {
      require(d.q >= 1.0 && std::isfinite(d.q), "WeightedProduct: q must lie in [1, inf)");
      require(!d.factors.empty(), "WeightedProduct: needs at least one factor");
      require(d.factors.size() == d.factor_weights.size(),
              "WeightedProduct: factor/weight count mismatch");
      for (double w : d.factor_weights) require(w >= 0.0, "WeightedProduct: negative weight");
      for (const auto& f : d.factors) validate_descriptor(f);
      break;
    }
    case SpaceKind::Cone:
      require(d.factors.size() == 1, "Cone: needs exactly one base space");
      validate_descriptor(d.factors[0]);
      break;
    case SpaceKind::Orthogonal:
      require(d.dim >= 1, "Orthogonal: dimension must be >= 1");
      break;
    case SpaceKind::Empirical1D:
      require(d.wasserstein_order >= 1.0 && std::isfinite(d.wasserstein_order),
              "Empirical1D: order must lie in [1, inf)");
      break;
    case SpaceKind::SlackInterleaving:
      require(d.slack >= 0.0, "SlackInterleaving: slack must be >= 0");
      require(!d.grid.empty(), "SlackInterleaving: empty grid");
      for (size_t i = 1; i < d.grid.size(); ++i)
        require(d.grid[i] > d.grid[i - 1], "SlackInterleaving: grid must be strictly increasing");
      break;
    case SpaceKind::DampedSup:
      require(!d.grid.empty(), "DampedSup: empty grid");
      for (size_t i = 0; i < d.grid.size(); ++i) {
        require(d.grid[i] > 0.0, "DampedSup: grid points must be positive");
        if (i > 0) require(d.grid[i] > d.grid[i - 1], "DampedSup: grid must be strictly increasing");
      }
      break;
    case SpaceKind::Discrete:
      require(!d.alphabet.empty(), "Discrete: empty alphabet");
      break;
  }
}

inline MetricSpaceDescriptor real_space() { return MetricSpaceDescriptor{}; }

inline MetricSpaceDescriptor lambda_inf_space() {
  MetricSpaceDescriptor d;
  d.kind = SpaceKind::LambdaInf;
  return d;
}

inline MetricSpaceDescriptor lambda_q_space(double q) {
  MetricSpaceDescriptor d;
  d.kind = SpaceKind::LambdaQ;
  d.q = q;
  validate_descriptor(d);
  return d;
}

inline MetricSpaceDescriptor euclidean_space(int n, double r) {
  MetricSpaceDescriptor d;
  d.kind = SpaceKind::EuclideanLr;
  d.dim = n;
  d.r = r;
  validate_descriptor(d);
  return d;
}

inline MetricSpaceDescriptor product_space(std::vector<MetricSpaceDescriptor> factors,
                                           std::vector<double> weights, double q) {
  MetricSpaceDescriptor d;
  d.kind = SpaceKind::WeightedProduct;
  d.factors = std::move(factors);
  d.factor_weights = std::move(weights);
  d.q = q;
  validate_descriptor(d);
  return d;
}

inline MetricSpaceDescriptor cone_space(MetricSpaceDescriptor base) {
  MetricSpaceDescriptor d;
  d.kind = SpaceKind::Cone;
  d.factors.push_back(std::move(base));
  validate_descriptor(d);
  return d;
}

inline MetricSpaceDescriptor orthogonal_space(int dim) {
  MetricSpaceDescriptor d;
  d.kind = SpaceKind::Orthogonal;
  d.dim = dim;
  validate_descriptor(d);
  return d;
}

inline MetricSpaceDescriptor empirical_space(double order) {
  MetricSpaceDescriptor d;
  d.kind = SpaceKind::Empirical1D;
  d.wasserstein_order = order;
  validate_descriptor(d);
  return d;
}

inline MetricSpaceDescriptor slack_space(double lambda, std::vector<double> grid) {
  MetricSpaceDescriptor d;
  d.kind = SpaceKind::SlackInterleaving;
  d.slack = lambda;
  d.grid = std::move(grid);
  validate_descriptor(d);
  return d;
}

inline MetricSpaceDescriptor damped_sup_space(std::vector<double> grid) {
  MetricSpaceDescriptor d;
  d.kind = SpaceKind::DampedSup;
  d.grid = std::move(grid);
  validate_descriptor(d);
  return d;
}

inline MetricSpaceDescriptor discrete_space(std::vector<std::string> alphabet) {
  MetricSpaceDescriptor d;
  d.kind = SpaceKind::Discrete;
  d.alphabet = std::move(alphabet);
  validate_descriptor(d);
  return d;
}

// Full conformance check; used at construction/parse time. Includes the
// orthogonality test M^T M = I within 1e-9.
inline void validate_point(const MetricSpaceDescriptor& d, const MetricPoint& p) {
  switch (d.kind) {
    case SpaceKind::Real:
      require(p.kind == PointKind::Scalar, "point does not conform: expected scalar");
      break;
    case SpaceKind::LambdaInf:
    case SpaceKind::LambdaQ:
      require(p.kind == PointKind::Scalar, "point does not conform: expected scalar");
      require(p.scalar >= 0.0, "point does not conform: expected nonnegative scalar");
      break;
    case SpaceKind::EuclideanLr:
      require(p.kind == PointKind::Vector, "point does not conform: expected vector");
      require(static_cast<int>(p.values.size()) == d.dim,
              "point does not conform: vector length mismatch");
      break;
    case SpaceKind::WeightedProduct: {
      require(p.kind == PointKind::Tuple, "point does not conform: expected tuple");
      require(p.parts.size() == d.factors.size(),
              "point does not conform: tuple arity mismatch");
      for (size_t i = 0; i < d.factors.size(); ++i) validate_point(d.factors[i], p.parts[i]);
      break;
    }
    case SpaceKind::Cone:
      require(p.kind == PointKind::Cone, "point does not conform: expected cone point");
      require(p.radius >= 0.0, "point does not conform: negative cone radius");
      validate_point(d.factors[0], *p.base);
      break;
    case SpaceKind::Orthogonal: {
      require(p.kind == PointKind::Matrix, "point does not conform: expected matrix");
      require(p.dim == d.dim, "point does not conform: matrix dimension mismatch");
      int n = d.dim;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          double dot = 0.0;
          for (int k = 0; k < n; ++k)
            dot += p.values[static_cast<size_t>(k) * n + i] * p.values[static_cast<size_t>(k) * n + j];
          double target = (i == j) ? 1.0 : 0.0;
          require(std::abs(dot - target) <= 1e-9,
                  "point does not conform: matrix is not orthogonal");
        }
      }
      break;
    }
    case SpaceKind::Empirical1D: {
      require(p.kind == PointKind::Empirical, "point does not conform: expected empirical");
      require(!p.values.empty(), "point does not conform: empty empirical support");
      double s = 0.0;
      for (double w : p.weights) {
        require(w >= 0.0, "point does not conform: negative empirical weight");
        s += w;
      }
      require(std::abs(s - 1.0) <= 1e-12, "point does not conform: empirical weights sum != 1");
      for (size_t i = 1; i < p.values.size(); ++i)
        require(p.values[i] >= p.values[i - 1], "point does not conform: unsorted support");
      break;
    }
    case SpaceKind::SlackInterleaving:
      require(p.kind == PointKind::Sampled, "point does not conform: expected sampled values");
      require(p.values.size() == d.grid.size(),
              "point does not conform: sampled length != grid length");
      for (double v : p.values)
        require(v >= 0.0, "point does not conform: negative sample");
      break;
    case SpaceKind::DampedSup:
      require(p.kind == PointKind::Sampled, "point does not conform: expected sampled values");
      require(p.values.size() == d.grid.size(),
              "point does not conform: sampled length != grid length");
      break;
    case SpaceKind::Discrete: {
      require(p.kind == PointKind::Label, "point does not conform: expected label");
      bool found = false;
      for (const auto& s : d.alphabet) found = found || (s == p.label);
      require(found, "point does not conform: label not in alphabet");
      break;
    }
  }
}

namespace detail {

inline void check_shape(bool ok) {
  if (!ok) throw ConformanceError("shape mismatch between points and descriptor");
}

// l^r norm of a difference vector; r may be inf.
inline double lr_norm_diff(const std::vector<double>& a, const std::vector<double>& b, double r) {
  check_shape(a.size() == b.size());
  if (is_infinite(r)) {
    double mx = 0.0;
    for (size_t i = 0; i < a.size(); ++i) mx = std::max(mx, std::abs(a[i] - b[i]));
    return mx;
  }
  if (r == 2.0) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
      double d = a[i] - b[i];
      s += d * d;
    }
    return std::sqrt(s);
  }
  if (r == 1.0) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
  }
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::pow(std::abs(a[i] - b[i]), r);
  return std::pow(s, 1.0 / r);
}

// W_p between two sorted finitely supported measures on the line, by the
// monotone (quantile) coupling. Shared by the Empirical1D target metric and
// by ot::solve_ot_1d.
inline double wasserstein_1d_sorted(const std::vector<double>& xs, const std::vector<double>& xw,
                                    const std::vector<double>& ys, const std::vector<double>& yw,
                                    double p) {
  size_t i = 0, j = 0;
  double wi = xs.empty() ? 0.0 : xw[0];
  double wj = ys.empty() ? 0.0 : yw[0];
  double sum = 0.0;
  while (i < xs.size() && j < ys.size()) {
    double m = std::min(wi, wj);
    sum += m * pow_p(std::abs(xs[i] - ys[j]), p);
    wi -= m;
    wj -= m;
    if (wi <= 0.0 && i + 1 < xs.size()) wi = xw[++i];
    else if (wi <= 0.0) ++i;
    if (wj <= 0.0 && j + 1 < ys.size()) wj = yw[++j];
    else if (wj <= 0.0) ++j;
  }
  if (p == 1.0) return sum;
  if (p == 2.0) return std::sqrt(sum);
  return std::pow(sum, 1.0 / p);
}

// W_inf on the line: max displacement along the monotone coupling.
inline double wasserstein_1d_inf_sorted(const std::vector<double>& xs,
                                        const std::vector<double>& xw,
                                        const std::vector<double>& ys,
                                        const std::vector<double>& yw) {
  size_t i = 0, j = 0;
  double wi = xs.empty() ? 0.0 : xw[0];
  double wj = ys.empty() ? 0.0 : yw[0];
  double mx = 0.0;
  while (i < xs.size() && j < ys.size()) {
    double m = std::min(wi, wj);
    if (m > 0.0) mx = std::max(mx, std::abs(xs[i] - ys[j]));
    wi -= m;
    wj -= m;
    if (wi <= 0.0 && i + 1 < xs.size()) wi = xw[++i];
    else if (wi <= 0.0) ++i;
    if (wj <= 0.0 && j + 1 < ys.size()) wj = yw[++j];
    else if (wj <= 0.0) ++j;
  }
  return mx;
}

}  // namespace detail

inline double distance(const MetricSpaceDescriptor& d, const MetricPoint& a,
                       const MetricPoint& b);

// Cone metric: (r^2 + s^2 - 2 r s cos(min(d_base(u,v), pi)))^(1/2). The
// radius-zero slice is the apex, so the base values of apex points never
// influence the result.
inline double cone_distance(const MetricSpaceDescriptor& base_desc, const MetricPoint& a,
                            const MetricPoint& b) {
  detail::check_shape(a.kind == PointKind::Cone && b.kind == PointKind::Cone);
  double r = a.radius, s = b.radius;
  if (r == 0.0 && s == 0.0) return 0.0;
  double db = 0.0;
  if (r != 0.0 && s != 0.0) db = std::min(distance(base_desc, *a.base, *b.base), std::numbers::pi);
  double rad = r * r + s * s - 2.0 * r * s * std::cos(db);
  return std::sqrt(std::max(0.0, rad));
}

// Damped-sup metric on grid samples: max_k e^{-2/t_k} |f1(t_k) - f2(t_k)|.
inline double damped_sup_distance(const MetricSpaceDescriptor& d, const MetricPoint& f1,
                                  const MetricPoint& f2) {
  detail::check_shape(f1.kind == PointKind::Sampled && f2.kind == PointKind::Sampled);
  detail::check_shape(f1.values.size() == d.grid.size() && f2.values.size() == d.grid.size());
  double mx = 0.0;
  for (size_t k = 0; k < d.grid.size(); ++k) {
    if (d.grid[k] <= 0.0) throw ConformanceError("damped_sup_distance: nonpositive grid point");
    double v = std::exp(-2.0 / d.grid[k]) * std::abs(f1.values[k] - f2.values[k]);
    mx = std::max(mx, v);
  }
  return mx;
}

namespace detail {

// Feasibility of a given epsilon for the lambda-slack interleaving condition
// on the shared grid: for all grid indices t and all (i,j), the minimum of
// f_i over grid samples within epsilon of t must not exceed f_j(t) + lambda
// * epsilon. Windows clamp at the grid boundary.
inline bool slack_feasible(const std::vector<double>& grid, const std::vector<double>& f1,
                           const std::vector<double>& f2, double lambda, double eps) {
  const size_t n = grid.size();
  const std::vector<double>* fs[2] = {&f1, &f2};
  for (size_t t = 0; t < n; ++t) {
    // window of grid indices with |t_s - t_t| <= eps
    size_t lo = t, hi = t;
    while (lo > 0 && grid[t] - grid[lo - 1] <= eps) --lo;
    while (hi + 1 < n && grid[hi + 1] - grid[t] <= eps) ++hi;
    for (int i = 0; i < 2; ++i) {
      double mn = kInf;
      for (size_t s = lo; s <= hi; ++s) mn = std::min(mn, (*fs[i])[s]);
      for (int j = 0; j < 2; ++j) {
        if (i == j) continue;
        if (mn > (*fs[j])[t] + lambda * eps) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

// Smallest feasible epsilon for the slack-interleaving condition, found by
// bisection. Feasibility is monotone in epsilon (the window grows, the slack
// term grows), so bisection is valid. For lambda = 0 no finite epsilon may be
// feasible (two distinct constants, say), in which case the result is inf.
inline double slack_interleaving_distance(const MetricSpaceDescriptor& d, const MetricPoint& f1,
                                          const MetricPoint& f2) {
  detail::check_shape(f1.kind == PointKind::Sampled && f2.kind == PointKind::Sampled);
  detail::check_shape(f1.values.size() == d.grid.size() && f2.values.size() == d.grid.size());
  for (double v : f1.values)
    if (v < 0.0) throw ConformanceError("slack_interleaving_distance: negative sample");
  for (double v : f2.values)
    if (v < 0.0) throw ConformanceError("slack_interleaving_distance: negative sample");

  if (detail::slack_feasible(d.grid, f1.values, f2.values, d.slack, 0.0)) return 0.0;

  double span = d.grid.back() - d.grid.front();
  double maxdiff = 0.0;
  for (size_t k = 0; k < f1.values.size(); ++k)
    maxdiff = std::max(maxdiff, std::abs(f1.values[k] - f2.values[k]));
  // Past a full-span window the min no longer changes, so feasibility at
  // hi decides between a finite value and inf when lambda = 0. For lambda >
  // 0, eps = maxdiff/lambda is always feasible (s = t is in every window).
  double hi = span + (d.slack > 0.0 ? maxdiff / d.slack : 0.0);
  if (!detail::slack_feasible(d.grid, f1.values, f2.values, d.slack, hi)) return kInf;
  double lo = 0.0;
  // tighter than the 1e-9 contract so downstream embeddings stay exact to
  // 1e-12
  double tol = 1e-13 * std::max({span, maxdiff, 1.0});
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (detail::slack_feasible(d.grid, f1.values, f2.values, d.slack, mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

// d_Z(a, b) for any descriptor variant.
inline double distance(const MetricSpaceDescriptor& d, const MetricPoint& a,
                       const MetricPoint& b) {
  switch (d.kind) {
    case SpaceKind::Real:
      detail::check_shape(a.kind == PointKind::Scalar && b.kind == PointKind::Scalar);
      return std::abs(a.scalar - b.scalar);
    case SpaceKind::LambdaInf:
      detail::check_shape(a.kind == PointKind::Scalar && b.kind == PointKind::Scalar);
      return a.scalar == b.scalar ? 0.0 : std::max(a.scalar, b.scalar);
    case SpaceKind::LambdaQ: {
      detail::check_shape(a.kind == PointKind::Scalar && b.kind == PointKind::Scalar);
      double diff = std::abs(pow_p(a.scalar, d.q) - pow_p(b.scalar, d.q));
      return std::pow(diff, 1.0 / d.q);
    }
    case SpaceKind::EuclideanLr:
      detail::check_shape(a.kind == PointKind::Vector && b.kind == PointKind::Vector);
      detail::check_shape(static_cast<int>(a.values.size()) == d.dim &&
                          static_cast<int>(b.values.size()) == d.dim);
      return detail::lr_norm_diff(a.values, b.values, d.r);
    case SpaceKind::WeightedProduct: {
      detail::check_shape(a.kind == PointKind::Tuple && b.kind == PointKind::Tuple);
      detail::check_shape(a.parts.size() == d.factors.size() &&
                          b.parts.size() == d.factors.size());
      double s = 0.0;
      for (size_t k = 0; k < d.factors.size(); ++k) {
        double dk = distance(d.factors[k], a.parts[k], b.parts[k]);
        s += d.factor_weights[k] * pow_p(dk, d.q);
      }
      return std::pow(s, 1.0 / d.q);
    }
    case SpaceKind::Cone:
      return cone_distance(d.factors[0], a, b);
    case SpaceKind::Orthogonal: {
      detail::check_shape(a.kind == PointKind::Matrix && b.kind == PointKind::Matrix);
      detail::check_shape(a.dim == d.dim && b.dim == d.dim);
      double s = 0.0;
      for (size_t k = 0; k < a.values.size(); ++k) {
        double diff = a.values[k] - b.values[k];
        s += diff * diff;
      }
      return std::sqrt(s);
    }
    case SpaceKind::Empirical1D:
      detail::check_shape(a.kind == PointKind::Empirical && b.kind == PointKind::Empirical);
      return detail::wasserstein_1d_sorted(a.values, a.weights, b.values, b.weights,
                                           d.wasserstein_order);
    case SpaceKind::SlackInterleaving:
      return slack_interleaving_distance(d, a, b);
    case SpaceKind::DampedSup:
      return damped_sup_distance(d, a, b);
    case SpaceKind::Discrete:
      detail::check_shape(a.kind == PointKind::Label && b.kind == PointKind::Label);
      return a.label == b.label ? 0.0 : 1.0;
  }
  throw ZgwError("distance: unknown descriptor kind");
}

inline bool is_geodesic_space(const MetricSpaceDescriptor& d) {
  switch (d.kind) {
    case SpaceKind::Real:
    case SpaceKind::EuclideanLr:
      return true;
    case SpaceKind::WeightedProduct:
      for (const auto& f : d.factors)
        if (!is_geodesic_space(f)) return false;
      return true;
    default:
      return false;
  }
}

// Point at parameter t on a geodesic from a to b. Supported for Real,
// EuclideanLr and weighted products of such; for non-uniquely-geodesic
// exponents (r = 1 or inf) this fixes the coordinatewise-linear geodesic.
inline MetricPoint geodesic_point(const MetricSpaceDescriptor& d, const MetricPoint& a,
                                  const MetricPoint& b, double t) {
  require(t >= 0.0 && t <= 1.0, "geodesic_point: t must lie in [0,1]");
  switch (d.kind) {
    case SpaceKind::Real:
      detail::check_shape(a.kind == PointKind::Scalar && b.kind == PointKind::Scalar);
      return scalar_point((1.0 - t) * a.scalar + t * b.scalar);
    case SpaceKind::EuclideanLr: {
      detail::check_shape(a.kind == PointKind::Vector && b.kind == PointKind::Vector);
      detail::check_shape(a.values.size() == b.values.size());
      std::vector<double> v(a.values.size());
      for (size_t i = 0; i < v.size(); ++i) v[i] = (1.0 - t) * a.values[i] + t * b.values[i];
      return vector_point(std::move(v));
    }
    case SpaceKind::WeightedProduct: {
      if (!is_geodesic_space(d))
        throw NonGeodesicSpace("geodesic_point: product has a non-geodesic factor");
      detail::check_shape(a.kind == PointKind::Tuple && b.kind == PointKind::Tuple);
      std::vector<MetricPoint> parts;
      parts.reserve(d.factors.size());
      for (size_t k = 0; k < d.factors.size(); ++k)
        parts.push_back(geodesic_point(d.factors[k], a.parts[k], b.parts[k], t));
      return tuple_point(std::move(parts));
    }
    default:
      throw NonGeodesicSpace("geodesic_point: space variant is not geodesic here");
  }
}

// Hausdorff distance between two finite point sets in (Z, d_Z).
inline double hausdorff_distance(const MetricSpaceDescriptor& d,
                                 const std::vector<MetricPoint>& A,
                                 const std::vector<MetricPoint>& B) {
  require(!A.empty() && !B.empty(), "hausdorff_distance: empty set");
  double h = 0.0;
  for (const auto& a : A) {
    double mn = kInf;
    for (const auto& b : B) mn = std::min(mn, distance(d, a, b));
    h = std::max(h, mn);
  }
  for (const auto& b : B) {
    double mn = kInf;
    for (const auto& a : A) mn = std::min(mn, distance(d, a, b));
    h = std::max(h, mn);
  }
  return h;
}

}  // namespace zgw
