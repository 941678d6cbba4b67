#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zgw/common.hpp"
#include "zgw/gw.hpp"
#include "zgw/network.hpp"
#include "zgw/ot.hpp"

namespace zgw {

enum class Direction { Out, In };

// Third lower bound: half the optimal transport cost of
// C(x,y) = W_p(row/column pushforwards of the kernels). Returns the value
// and the optimal outer coupling (for p < inf).
inline std::pair<double, Coupling> tlb(const ZNetwork& X, const ZNetwork& Y, double p,
                                       Direction dir = Direction::Out) {
  check_same_space(X, Y);
  const int n = X.size(), m = Y.size();
  Mat C(n, m);
  for (int i = 0; i < n; ++i) {
    std::vector<MetricPoint> row_x(n);
    for (int k = 0; k < n; ++k) row_x[k] = dir == Direction::Out ? X.at(i, k) : X.at(k, i);
    for (int j = 0; j < m; ++j) {
      std::vector<MetricPoint> row_y(m);
      for (int k = 0; k < m; ++k) row_y[k] = dir == Direction::Out ? Y.at(j, k) : Y.at(k, j);
      C(i, j) = wasserstein_in_Z(X.space, row_x, X.weights, row_y, Y.weights, p);
    }
  }
  if (is_infinite(p)) {
    double v = solve_ot_bottleneck(C, X.weights, Y.weights);
    return {0.5 * v, product_coupling(X.weights, Y.weights)};
  }
  Mat Cp = C;
  if (p != 1.0)
    for (double& c : Cp.a) c = pow_p(c, p);
  OtSolution sol = solve_ot_exact(Cp, X.weights, Y.weights);
  double v = std::max(0.0, sol.value);
  if (p == 2.0) v = std::sqrt(v);
  else if (p != 1.0) v = std::pow(v, 1.0 / p);
  return {0.5 * v, std::move(sol.plan)};
}

// First lower bound: half the 1-D Wasserstein distance between the
// eccentricity pushforwards.
inline double flb(const ZNetwork& X, const ZNetwork& Y, double p, const MetricPoint& z0,
                  Direction dir = Direction::Out) {
  check_same_space(X, Y);
  std::vector<double> ex =
      dir == Direction::Out ? eccentricity_out(X, p, z0) : eccentricity_in(X, p, z0);
  std::vector<double> ey =
      dir == Direction::Out ? eccentricity_out(Y, p, z0) : eccentricity_in(Y, p, z0);
  if (is_infinite(p)) return 0.5 * solve_ot_1d_inf(ex, X.weights, ey, Y.weights);
  return 0.5 * solve_ot_1d(ex, X.weights, ey, Y.weights, p);
}

// Size lower bound: half the absolute size difference.
inline double szlb(const ZNetwork& X, const ZNetwork& Y, double p, const MetricPoint& z0) {
  check_same_space(X, Y);
  return 0.5 * std::abs(network_size(X, p, z0) - network_size(Y, p, z0));
}

// Second lower bound: half the W_p distance between the full kernel
// pushforward measures (n^2 and m^2 atoms). Gated by a size cap since the
// inner LP is quadratic in the network sizes.
inline double slb(const ZNetwork& X, const ZNetwork& Y, double p, int cap = 64) {
  check_same_space(X, Y);
  const int n = X.size(), m = Y.size();
  if (n > cap || m > cap) throw SizeCapError("slb: network size exceeds the n^2 x m^2 LP cap");
  std::vector<MetricPoint> ax, ay;
  std::vector<double> wx, wy;
  ax.reserve(static_cast<size_t>(n) * n);
  wx.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ax.push_back(X.at(i, j));
      wx.push_back(X.weights[i] * X.weights[j]);
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      ay.push_back(Y.at(i, j));
      wy.push_back(Y.weights[i] * Y.weights[j]);
    }
  return 0.5 * wasserstein_in_Z(X.space, ax, wx, ay, wy, p);
}

struct BoundReport {
  double tlb = 0.0;
  double flb = 0.0;
  double szlb = 0.0;
  double slb = 0.0;
  MetricPoint z0;
  Coupling tlb_coupling;
  std::vector<std::string> ordering_violations;
};

// Computes the full hierarchy (out-direction) and asserts the chain
// tlb >= flb >= szlb within 1e-9; violations are recorded, not thrown.
// Default basepoint is the first kernel entry of X.
inline BoundReport bound_report(const ZNetwork& X, const ZNetwork& Y, double p,
                                std::optional<MetricPoint> z0 = {}) {
  check_same_space(X, Y);
  BoundReport rep;
  rep.z0 = z0.has_value() ? *z0 : X.at(0, 0);
  auto [tv, tc] = tlb(X, Y, p, Direction::Out);
  rep.tlb = tv;
  rep.tlb_coupling = std::move(tc);
  rep.flb = flb(X, Y, p, rep.z0, Direction::Out);
  rep.szlb = szlb(X, Y, p, rep.z0);
  rep.slb = slb(X, Y, p);
  if (rep.tlb < rep.flb - 1e-9)
    rep.ordering_violations.push_back("tlb < flb");
  if (rep.flb < rep.szlb - 1e-9)
    rep.ordering_violations.push_back("flb < szlb");
  return rep;
}

inline double best_lower_bound(const BoundReport& rep) {
  return std::max({rep.tlb, rep.flb, rep.szlb, rep.slb});
}

}  // namespace zgw
