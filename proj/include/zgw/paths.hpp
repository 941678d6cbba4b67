#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "zgw/common.hpp"
#include "zgw/gw.hpp"
#include "zgw/network.hpp"
#include "zgw/ot.hpp"

namespace zgw {

// Mixture path X_t = (X ⊔ Y, omega_X ⊔ omega_Y, (1-t) mu_X + t mu_Y).
// Diagonal blocks keep the original kernels; cross blocks take the constant
// z_fill. X_0 and X_1 are weakly isomorphic to X and Y.
inline ZNetwork mixture_path(const ZNetwork& X, const ZNetwork& Y, const MetricPoint& z_fill,
                             double t) {
  check_same_space(X, Y);
  require(t >= 0.0 && t <= 1.0, "mixture_path: t must lie in [0,1]");
  validate_point(X.space, z_fill);
  const int n = X.size(), m = Y.size();
  const int total = n + m;
  std::vector<double> weights(total);
  std::vector<std::string> labels(total);
  for (int i = 0; i < n; ++i) {
    weights[i] = (1.0 - t) * X.weights[i];
    labels[i] = "X." + X.labels[i];
  }
  for (int j = 0; j < m; ++j) {
    weights[n + j] = t * Y.weights[j];
    labels[n + j] = "Y." + Y.labels[j];
  }
  std::vector<MetricPoint> kernel(static_cast<size_t>(total) * total, z_fill);
  auto put = [&](int u, int v, const MetricPoint& p) {
    kernel[static_cast<size_t>(u) * total + v] = p;
  };
  for (int i = 0; i < n; ++i)
    for (int i2 = 0; i2 < n; ++i2) put(i, i2, X.at(i, i2));
  for (int j = 0; j < m; ++j)
    for (int j2 = 0; j2 < m; ++j2) put(n + j, n + j2, Y.at(j, j2));
  // Endpoints get weight exactly 0 on the vanished side. Rounding in the
  // convex combination is absorbed by the heaviest point so zero-weight
  // entries stay exactly zero.
  double s = 0.0;
  int heaviest = 0;
  for (int u = 0; u < total; ++u) {
    s += weights[u];
    if (weights[u] > weights[heaviest]) heaviest = u;
  }
  if (s != 1.0 && std::abs(s - 1.0) <= 1e-12) weights[heaviest] += 1.0 - s;
  return make_network(X.space, std::move(labels), std::move(weights), std::move(kernel));
}

// The transport plan (1-t) Delta_X + (t-s) pi + s Delta_Y between mixture
// samples X_s and X_t, s <= t, as an (n+m) x (n+m) coupling.
inline Coupling mixture_time_coupling(const ZNetwork& X, const ZNetwork& Y, const Coupling& pi,
                                      double s, double t) {
  require(0.0 <= s && s <= t && t <= 1.0, "mixture_time_coupling: need 0 <= s <= t <= 1");
  const int n = X.size(), m = Y.size();
  require(pi.pi.rows == n && pi.pi.cols == m, "mixture_time_coupling: coupling shape mismatch");
  const int total = n + m;
  Mat plan(total, total);
  for (int i = 0; i < n; ++i) plan(i, i) += (1.0 - t) * X.weights[i];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) plan(i, n + j) += (t - s) * pi.pi(i, j);
  for (int j = 0; j < m; ++j) plan(n + j, n + j) += s * Y.weights[j];

  std::vector<double> row(total), col(total);
  for (int i = 0; i < n; ++i) row[i] = (1.0 - s) * X.weights[i];
  for (int j = 0; j < m; ++j) row[n + j] = s * Y.weights[j];
  for (int i = 0; i < n; ++i) col[i] = (1.0 - t) * X.weights[i];
  for (int j = 0; j < m; ++j) col[n + j] = t * Y.weights[j];
  return make_coupling(std::move(plan), std::move(row), std::move(col));
}

// The three time-independent integrals of the mixture-path Hoelder estimate,
// at exponent p: I_pipi (distortion integrand of pi), I_Xpi and I_piY (size
// integrands against the fill point).
struct MixtureHolderTerms {
  double i_pipi = 0.0;
  double i_xpi = 0.0;
  double i_piy = 0.0;
};

inline MixtureHolderTerms mixture_holder_terms(const ZNetwork& X, const ZNetwork& Y,
                                               const MetricPoint& z_fill, const Coupling& pi,
                                               double p) {
  check_same_space(X, Y);
  require(!is_infinite(p), "mixture_holder_terms: finite p only");
  const int n = X.size(), m = Y.size();
  MixtureHolderTerms out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      double w = pi.pi(i, j);
      if (w == 0.0) continue;
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < m; ++j2) {
          double w2 = pi.pi(i2, j2);
          if (w2 == 0.0) continue;
          out.i_pipi += w * w2 * pow_p(distance(X.space, X.at(i, i2), Y.at(j, j2)), p);
        }
    }
  // (u,v) on the X diagonal, (u',v') from pi: the second slot crosses blocks.
  for (int x = 0; x < n; ++x)
    for (int i2 = 0; i2 < n; ++i2)
      out.i_xpi +=
          X.weights[x] * X.weights[i2] * pow_p(distance(X.space, X.at(x, i2), z_fill), p);
  for (int y = 0; y < m; ++y)
    for (int j2 = 0; j2 < m; ++j2)
      out.i_piy +=
          Y.weights[y] * Y.weights[j2] * pow_p(distance(X.space, z_fill, Y.at(y, j2)), p);
  return out;
}

// Contraction path X_t = (X ⊔ {*}, omega-hat, (1-t) mu + t delta_*): the
// kernel keeps omega on X x X and takes z on any pair touching the new
// point.
inline ZNetwork contraction_path(const ZNetwork& net, const MetricPoint& z, double t) {
  require(t >= 0.0 && t <= 1.0, "contraction_path: t must lie in [0,1]");
  validate_point(net.space, z);
  const int n = net.size();
  const int total = n + 1;
  std::vector<double> weights(total);
  std::vector<std::string> labels(total);
  for (int i = 0; i < n; ++i) {
    weights[i] = (1.0 - t) * net.weights[i];
    labels[i] = net.labels[i];
  }
  weights[n] = t;
  labels[n] = "*";
  std::vector<MetricPoint> kernel(static_cast<size_t>(total) * total, z);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      kernel[static_cast<size_t>(i) * total + j] = net.at(i, j);
  double s = 0.0;
  int heaviest = 0;
  for (int u = 0; u < total; ++u) {
    s += weights[u];
    if (weights[u] > weights[heaviest]) heaviest = u;
  }
  if (s != 1.0 && std::abs(s - 1.0) <= 1e-12) weights[heaviest] += 1.0 - s;
  return make_network(net.space, std::move(labels), std::move(weights), std::move(kernel));
}

// Explicit coupling between contraction samples X_s and X_t (s <= t): keep
// 1-t mass in place, send t-s mass from X to *, keep s mass at *.
inline Coupling contraction_time_coupling(const ZNetwork& net, double s, double t) {
  require(0.0 <= s && s <= t && t <= 1.0, "contraction_time_coupling: need 0 <= s <= t <= 1");
  const int n = net.size();
  const int total = n + 1;
  Mat plan(total, total);
  for (int i = 0; i < n; ++i) plan(i, i) = (1.0 - t) * net.weights[i];
  for (int i = 0; i < n; ++i) plan(i, n) = (t - s) * net.weights[i];
  plan(n, n) = s;
  std::vector<double> row(total), col(total);
  for (int i = 0; i < n; ++i) {
    row[i] = (1.0 - s) * net.weights[i];
    col[i] = (1.0 - t) * net.weights[i];
  }
  row[n] = s;
  col[n] = t;
  return make_coupling(std::move(plan), std::move(row), std::move(col));
}

// Geodesic interpolation X_t = (supp(pi), geodesics of kernel pairs, pi).
// Requires a geodesic target space. The carrier is the support of pi above
// the threshold (weights renormalized; exact when tau only excludes zeros);
// pass keep_full = true to retain the whole product carrier, which the
// p = inf distortion needs.
inline ZNetwork geodesic_interpolate(const ZNetwork& X, const ZNetwork& Y, const Coupling& pi,
                                     double t, double tau = 1e-12, bool keep_full = false) {
  check_same_space(X, Y);
  require(t >= 0.0 && t <= 1.0, "geodesic_interpolate: t must lie in [0,1]");
  if (!is_geodesic_space(X.space))
    throw NonGeodesicSpace("geodesic_interpolate: target space is not geodesic");
  const int n = X.size(), m = Y.size();
  require(pi.pi.rows == n && pi.pi.cols == m, "geodesic_interpolate: coupling shape mismatch");
  require(marginal_residual(pi.pi, X.weights, Y.weights) <= 1e-9,
          "geodesic_interpolate: coupling does not couple the inputs");

  std::vector<std::pair<int, int>> carrier;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (keep_full || pi.pi(i, j) > tau) carrier.emplace_back(i, j);
  require(!carrier.empty(), "geodesic_interpolate: empty support");

  double mass = 0.0;
  for (auto [i, j] : carrier) mass += pi.pi(i, j);
  std::vector<double> weights;
  std::vector<std::string> labels;
  weights.reserve(carrier.size());
  for (auto [i, j] : carrier) {
    weights.push_back(pi.pi(i, j) / mass);
    labels.push_back(X.labels[i] + "|" + Y.labels[j]);
  }
  const int N = static_cast<int>(carrier.size());
  std::vector<MetricPoint> kernel;
  kernel.reserve(static_cast<size_t>(N) * N);
  for (auto [i, j] : carrier)
    for (auto [i2, j2] : carrier)
      kernel.push_back(geodesic_point(X.space, X.at(i, i2), Y.at(j, j2), t));
  return make_network(X.space, std::move(labels), std::move(weights), std::move(kernel));
}

enum class PathKind { Mixture, Contraction, Geodesic };

// A path request: endpoints plus the kind-specific auxiliary data (constant
// cross-fill point for mixture/contraction, coupling for geodesic) and the
// sample times.
struct PathSpec {
  PathKind kind = PathKind::Mixture;
  ZNetwork from;
  std::optional<ZNetwork> to;        // unused for contraction
  std::optional<MetricPoint> fill;   // mixture cross blocks / contraction target
  std::optional<Coupling> coupling;  // geodesic transport plan
  std::vector<double> times;         // sorted, within [0,1]
  bool keep_full_support = false;    // geodesic carrier, needed for p = inf
};

inline std::vector<ZNetwork> sample_path(const PathSpec& spec) {
  std::vector<double> times = spec.times;
  std::sort(times.begin(), times.end());
  for (double t : times)
    require(t >= 0.0 && t <= 1.0, "sample_path: times must lie in [0,1]");
  require(!times.empty(), "sample_path: no sample times");

  std::vector<ZNetwork> out;
  out.reserve(times.size());
  switch (spec.kind) {
    case PathKind::Mixture: {
      require(spec.to.has_value(), "sample_path: mixture needs two endpoints");
      MetricPoint fill = spec.fill.value_or(spec.from.at(0, 0));
      for (double t : times) out.push_back(mixture_path(spec.from, *spec.to, fill, t));
      break;
    }
    case PathKind::Contraction: {
      MetricPoint z = spec.fill.value_or(spec.from.at(0, 0));
      for (double t : times) out.push_back(contraction_path(spec.from, z, t));
      break;
    }
    case PathKind::Geodesic: {
      require(spec.to.has_value() && spec.coupling.has_value(),
              "sample_path: geodesic needs two endpoints and a coupling");
      for (double t : times)
        out.push_back(geodesic_interpolate(spec.from, *spec.to, *spec.coupling, t, 1e-12,
                                           spec.keep_full_support));
      break;
    }
  }
  return out;
}

struct GeodesicCheckRow {
  double s = 0.0;
  double t = 0.0;
  double lhs = 0.0;  // distortion of the pushforward diagonal coupling between X_s, X_t
  double rhs = 0.0;  // |s - t| * dis_p(pi)
};

struct GeodesicCheck {
  std::vector<GeodesicCheckRow> rows;
  double base_distortion = 0.0;
  double max_deviation = 0.0;
  bool optimal_certified = false;  // caller-supplied: pi known optimal
  bool geodesic_inequality_asserted = false;
};

// Evaluates the distortion identity dis(Delta_* pi; X_s, X_t) =
// |s - t| dis(pi) at all time pairs. This holds for any feasible pi; the
// full GW-level geodesic inequality is asserted only when the caller
// certifies pi optimal.
inline GeodesicCheck verify_geodesic(const ZNetwork& X, const ZNetwork& Y, const Coupling& pi,
                                     double p, const std::vector<double>& times,
                                     bool optimal_certified = false) {
  GeodesicCheck out;
  out.optimal_certified = optimal_certified;
  out.base_distortion = distortion(X, Y, pi, p);
  const bool keep_full = is_infinite(p);

  std::vector<ZNetwork> samples;
  samples.reserve(times.size());
  for (double t : times) samples.push_back(geodesic_interpolate(X, Y, pi, t, 1e-12, keep_full));

  for (size_t a = 0; a < times.size(); ++a) {
    for (size_t b = 0; b < times.size(); ++b) {
      if (a == b) continue;
      const ZNetwork& A = samples[a];
      Coupling diag = diagonal_coupling(A.weights);
      GeodesicCheckRow row;
      row.s = times[a];
      row.t = times[b];
      row.lhs = distortion(A, samples[b], diag, p);
      row.rhs = std::abs(times[a] - times[b]) * out.base_distortion;
      out.rows.push_back(row);
      double scale = std::max(1.0, out.base_distortion);
      out.max_deviation = std::max(out.max_deviation, std::abs(row.lhs - row.rhs) / scale);
    }
  }
  out.geodesic_inequality_asserted = optimal_certified && out.max_deviation <= 1e-9;
  return out;
}

}  // namespace zgw
