#pragma once

// Test-side generators and reference oracles. Oracles here are written
// directly from the definitions and stay independent of the library code
// paths they check.

#include <algorithm>
#include <cmath>
#include <vector>

#include "zgw/zgw.hpp"

namespace testsupport {

using namespace zgw;

// --- independent generators -------------------------------------------------

inline std::vector<double> random_simplex(int n, Rng& rng) {
  std::vector<double> w(n);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    w[i] = 0.1 + rng.uniform();
    s += w[i];
  }
  for (int i = 0; i < n; ++i) w[i] /= s;
  double partial = 0.0;
  for (int i = 0; i + 1 < n; ++i) partial += w[i];
  w[n - 1] = 1.0 - partial;
  return w;
}

// --- slack interleaving oracle ----------------------------------------------

// Literal feasibility check of the definition at a single epsilon.
inline bool slack_condition_holds(const std::vector<double>& grid, const std::vector<double>& f1,
                                  const std::vector<double>& f2, double lambda, double eps) {
  const std::vector<double>* f[2] = {&f1, &f2};
  for (size_t t = 0; t < grid.size(); ++t) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        if (i == j) continue;
        double mn = kInf;
        for (size_t s = 0; s < grid.size(); ++s)
          if (std::abs(grid[s] - grid[t]) <= eps) mn = std::min(mn, (*f[i])[s]);
        if (mn > (*f[j])[t] + lambda * eps) return false;
      }
    }
  }
  return true;
}

// Brute-force infimum: linear scan over a fine epsilon grid, then local
// refinement. Independent of the library's bisection.
inline double reference_slack_distance(const std::vector<double>& grid,
                                       const std::vector<double>& f1,
                                       const std::vector<double>& f2, double lambda) {
  if (slack_condition_holds(grid, f1, f2, lambda, 0.0)) return 0.0;
  double span = grid.back() - grid.front();
  double maxdiff = 0.0;
  for (size_t k = 0; k < f1.size(); ++k) maxdiff = std::max(maxdiff, std::abs(f1[k] - f2[k]));
  double top = span + (lambda > 0.0 ? maxdiff / lambda : 0.0);
  if (!slack_condition_holds(grid, f1, f2, lambda, top)) return kInf;
  const int steps = 4000;
  double lo = 0.0, hi = top;
  for (int k = 1; k <= steps; ++k) {
    double eps = top * k / steps;
    if (slack_condition_holds(grid, f1, f2, lambda, eps)) {
      hi = eps;
      lo = top * (k - 1) / steps;
      break;
    }
  }
  for (int iter = 0; iter < 100; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (slack_condition_holds(grid, f1, f2, lambda, mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

// --- transportation polytope oracles ------------------------------------

// All vertices of the transportation polytope C(mu, nu) for small n, m:
// spanning trees of K_{n,m} with nonnegative tree flows.
inline std::vector<Mat> polytope_vertices(const std::vector<double>& mu,
                                          const std::vector<double>& nu) {
  const int n = static_cast<int>(mu.size());
  const int m = static_cast<int>(nu.size());
  const int cells = n * m;
  const int basis_size = n + m - 1;
  std::vector<Mat> vertices;

  std::vector<int> pick(basis_size);
  // enumerate all cell subsets of size n + m - 1
  std::vector<int> idx(basis_size);
  for (int i = 0; i < basis_size; ++i) idx[i] = i;
  while (true) {
    // check spanning tree + solve flows by leaf elimination
    std::vector<std::pair<int, int>> edges;
    for (int k : idx) edges.emplace_back(k / m, k % m);
    std::vector<int> deg_row(n, 0), deg_col(m, 0);
    for (auto [i, j] : edges) {
      ++deg_row[i];
      ++deg_col[j];
    }
    bool covers = true;
    for (int i = 0; i < n; ++i) covers = covers && deg_row[i] > 0;
    for (int j = 0; j < m; ++j) covers = covers && deg_col[j] > 0;
    if (covers) {
      std::vector<double> a = mu, b = nu;
      std::vector<double> flow(edges.size(), 0.0);
      std::vector<char> used(edges.size(), 0);
      bool ok = true;
      for (int round = 0; round < basis_size && ok; ++round) {
        int leaf = -1;
        for (size_t e = 0; e < edges.size(); ++e) {
          if (used[e]) continue;
          auto [i, j] = edges[e];
          if (deg_row[i] == 1 || deg_col[j] == 1) {
            leaf = static_cast<int>(e);
            break;
          }
        }
        if (leaf < 0) {
          ok = false;  // contains a cycle
          break;
        }
        auto [i, j] = edges[leaf];
        double f = deg_row[i] == 1 ? a[i] : b[j];
        flow[leaf] = f;
        a[i] -= f;
        b[j] -= f;
        used[leaf] = 1;
        --deg_row[i];
        --deg_col[j];
      }
      if (ok) {
        bool nonneg = true;
        for (double f : flow) nonneg = nonneg && f >= -1e-12;
        if (nonneg) {
          Mat v(n, m);
          for (size_t e = 0; e < edges.size(); ++e)
            v(edges[e].first, edges[e].second) += std::max(0.0, flow[e]);
          vertices.push_back(std::move(v));
        }
      }
    }
    // next combination
    int pos = basis_size - 1;
    while (pos >= 0 && idx[pos] == cells - basis_size + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int k = pos + 1; k < basis_size; ++k) idx[k] = idx[k - 1] + 1;
  }
  return vertices;
}

inline double lp_cost(const Mat& pi, const Mat& cost) {
  double s = 0.0;
  for (int i = 0; i < pi.rows; ++i)
    for (int j = 0; j < pi.cols; ++j) s += pi(i, j) * cost(i, j);
  return s;
}

// exact LP optimum by vertex enumeration (linear objective attains its
// minimum at a vertex)
inline double reference_ot_value(const Mat& cost, const std::vector<double>& mu,
                                 const std::vector<double>& nu) {
  double best = kInf;
  for (const auto& v : polytope_vertices(mu, nu)) best = std::min(best, lp_cost(v, cost));
  return best;
}

// Grid brute force over the free block, feasibility-projected; for dof <= 2.
inline double grid_ot_value(const Mat& cost, const std::vector<double>& mu,
                            const std::vector<double>& nu, int resolution) {
  const int n = static_cast<int>(mu.size());
  const int m = static_cast<int>(nu.size());
  std::vector<std::pair<int, int>> free_cells;
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j + 1 < m; ++j) free_cells.emplace_back(i, j);
  Mat pi(n, m);
  double best = kInf;
  std::vector<int> steps(free_cells.size(), 0);
  auto eval = [&]() {
    for (int i = 0; i + 1 < n; ++i) {
      double s = 0.0;
      for (int j = 0; j + 1 < m; ++j) s += pi(i, j);
      double rest = mu[i] - s;
      if (rest < -1e-12) return;
      pi(i, m - 1) = std::max(0.0, rest);
    }
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int i = 0; i + 1 < n; ++i) s += pi(i, j);
      double rest = nu[j] - s;
      if (rest < -1e-12) return;
      pi(n - 1, j) = std::max(0.0, rest);
    }
    best = std::min(best, lp_cost(pi, cost));
  };
  if (free_cells.empty()) {
    eval();
    return best;
  }
  while (true) {
    for (size_t k = 0; k < free_cells.size(); ++k) {
      auto [i, j] = free_cells[k];
      pi(i, j) = std::min(mu[i], nu[j]) * steps[k] / resolution;
    }
    eval();
    size_t k = 0;
    for (; k < steps.size(); ++k) {
      if (steps[k] < resolution) {
        ++steps[k];
        break;
      }
      steps[k] = 0;
    }
    if (k == steps.size()) break;
  }
  return best;
}

// --- distortion reference --------------------------------------------------

// Direct four-index evaluation of dis_p from the definition.
inline double reference_distortion(const ZNetwork& X, const ZNetwork& Y, const Mat& pi,
                                   double p) {
  const int n = X.size(), m = Y.size();
  if (is_infinite(p)) {
    double mx = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j)
        for (int i2 = 0; i2 < n; ++i2)
          for (int j2 = 0; j2 < m; ++j2)
            if (pi(i, j) > 1e-12 && pi(i2, j2) > 1e-12)
              mx = std::max(mx, distance(X.space, X.at(i, i2), Y.at(j, j2)));
    return mx;
  }
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < m; ++j2)
          s += pi(i, j) * pi(i2, j2) *
               std::pow(distance(X.space, X.at(i, i2), Y.at(j, j2)), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace testsupport
