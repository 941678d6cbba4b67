#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <vector>

#include "zgw/common.hpp"
#include "zgw/metric_space.hpp"

namespace zgw {

// Nonnegative n x m matrix with prescribed marginals.
struct Coupling {
  Mat pi;
  std::vector<double> mu;
  std::vector<double> nu;
};

inline double marginal_residual(const Mat& pi, const std::vector<double>& mu,
                                const std::vector<double>& nu) {
  double res = 0.0;
  for (int i = 0; i < pi.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < pi.cols; ++j) s += pi(i, j);
    res = std::max(res, std::abs(s - mu[i]));
  }
  for (int j = 0; j < pi.cols; ++j) {
    double s = 0.0;
    for (int i = 0; i < pi.rows; ++i) s += pi(i, j);
    res = std::max(res, std::abs(s - nu[j]));
  }
  return res;
}

// Validates marginals within 1e-9 and clamps entries in [-1e-15, 0) to zero.
inline Coupling make_coupling(Mat pi, std::vector<double> mu, std::vector<double> nu) {
  require(pi.rows == static_cast<int>(mu.size()) && pi.cols == static_cast<int>(nu.size()),
          "make_coupling: shape mismatch");
  for (double& x : pi.a) {
    if (x < 0.0) {
      require(x >= -1e-15, "make_coupling: negative entry");
      x = 0.0;
    }
  }
  require(marginal_residual(pi, mu, nu) <= 1e-9, "make_coupling: marginals violated");
  return Coupling{std::move(pi), std::move(mu), std::move(nu)};
}

inline Coupling product_coupling(const std::vector<double>& mu, const std::vector<double>& nu) {
  Mat pi(static_cast<int>(mu.size()), static_cast<int>(nu.size()));
  for (int i = 0; i < pi.rows; ++i)
    for (int j = 0; j < pi.cols; ++j) pi(i, j) = mu[i] * nu[j];
  return Coupling{std::move(pi), mu, nu};
}

inline Coupling diagonal_coupling(const std::vector<double>& mu) {
  Mat pi(static_cast<int>(mu.size()), static_cast<int>(mu.size()));
  for (int i = 0; i < pi.rows; ++i) pi(i, i) = mu[i];
  return Coupling{std::move(pi), mu, mu};
}

struct OtSolution {
  Coupling plan;
  double value = 0.0;
  // largest violation of dual feasibility at termination (certifies optimality)
  double dual_residual = 0.0;
};

namespace detail {

struct BasicCell {
  int i, j;
  double flow;
};

// Transportation simplex (northwest-corner start + MODI pivoting). Entering
// variable is the most negative reduced cost with lexicographic tie-breaking;
// after an iteration budget it falls back to Bland's rule, which cannot
// cycle. Zero-mass rows/columns must be filtered by the caller.
inline OtSolution transport_simplex(const Mat& cost, const std::vector<double>& mu,
                                    const std::vector<double>& nu) {
  const int n = static_cast<int>(mu.size());
  const int m = static_cast<int>(nu.size());
  double cost_scale = 1.0;
  for (double c : cost.a) {
    require(std::isfinite(c), "solve_ot_exact: cost must be finite");
    cost_scale = std::max(cost_scale, std::abs(c));
  }
  const double rc_tol = 1e-12 * cost_scale;

  // Northwest-corner rule; always yields n + m - 1 basic cells (some possibly
  // zero on degenerate steps) whose support forms a spanning tree.
  std::vector<BasicCell> basis;
  basis.reserve(n + m - 1);
  {
    std::vector<double> a = mu, b = nu;
    int i = 0, j = 0;
    while (true) {
      double t = std::min(a[i], b[j]);
      basis.push_back({i, j, t});
      a[i] -= t;
      b[j] -= t;
      if (i == n - 1 && j == m - 1) break;
      if (a[i] <= b[j] && i < n - 1) ++i;
      else if (j < m - 1) ++j;
      else ++i;
    }
  }

  std::vector<std::vector<int>> row_cells(n), col_cells(m);
  auto rebuild_adjacency = [&]() {
    for (auto& v : row_cells) v.clear();
    for (auto& v : col_cells) v.clear();
    for (int k = 0; k < static_cast<int>(basis.size()); ++k) {
      row_cells[basis[k].i].push_back(k);
      col_cells[basis[k].j].push_back(k);
    }
  };
  rebuild_adjacency();

  std::vector<double> u(n), v(m);
  std::vector<char> u_set(n), v_set(m);
  auto compute_duals = [&]() {
    std::fill(u_set.begin(), u_set.end(), 0);
    std::fill(v_set.begin(), v_set.end(), 0);
    u[0] = 0.0;
    u_set[0] = 1;
    int reached = 1;
    std::deque<int> queue = {0};  // row nodes 0..n-1, col nodes n..n+m-1
    while (!queue.empty()) {
      int node = queue.front();
      queue.pop_front();
      if (node < n) {
        for (int k : row_cells[node]) {
          int j = basis[k].j;
          if (!v_set[j]) {
            v[j] = cost(node, j) - u[node];
            v_set[j] = 1;
            ++reached;
            queue.push_back(n + j);
          }
        }
      } else {
        int j = node - n;
        for (int k : col_cells[j]) {
          int i = basis[k].i;
          if (!u_set[i]) {
            u[i] = cost(i, j) - v[j];
            u_set[i] = 1;
            ++reached;
            queue.push_back(i);
          }
        }
      }
    }
    require(reached == n + m, "solve_ot_exact: basis lost its spanning tree");
  };

  // Path in the basis tree from row `si` to column `sj`; returns cell indices.
  std::vector<int> parent_cell(n + m), parent_node(n + m);
  auto tree_path = [&](int si, int sj) {
    std::fill(parent_node.begin(), parent_node.end(), -2);
    parent_node[si] = -1;
    std::deque<int> queue = {si};
    int target = n + sj;
    while (!queue.empty()) {
      int node = queue.front();
      queue.pop_front();
      if (node == target) break;
      if (node < n) {
        for (int k : row_cells[node]) {
          int nxt = n + basis[k].j;
          if (parent_node[nxt] == -2) {
            parent_node[nxt] = node;
            parent_cell[nxt] = k;
            queue.push_back(nxt);
          }
        }
      } else {
        for (int k : col_cells[node - n]) {
          int nxt = basis[k].i;
          if (parent_node[nxt] == -2) {
            parent_node[nxt] = node;
            parent_cell[nxt] = k;
            queue.push_back(nxt);
          }
        }
      }
    }
    require(parent_node[target] != -2, "solve_ot_exact: entering cell has no tree path");
    std::vector<int> path;
    for (int node = target; parent_node[node] != -1; node = parent_node[node])
      path.push_back(parent_cell[node]);
    std::reverse(path.begin(), path.end());
    return path;
  };

  const long bland_after = 400 + 50L * (n + m);
  const long hard_cap = 1000000L + 2000L * static_cast<long>(n + m);
  double dual_residual = 0.0;
  for (long iter = 0;; ++iter) {
    require(iter < hard_cap, "solve_ot_exact: pivot limit exceeded");
    compute_duals();
    std::vector<char> in_basis(static_cast<size_t>(n) * m, 0);
    for (const auto& c : basis) in_basis[static_cast<size_t>(c.i) * m + c.j] = 1;

    int ei = -1, ej = -1;
    double best = -rc_tol;
    bool bland = iter >= bland_after;
    for (int i = 0; i < n && !(bland && ei >= 0); ++i) {
      for (int j = 0; j < m; ++j) {
        if (in_basis[static_cast<size_t>(i) * m + j]) continue;
        double rc = cost(i, j) - u[i] - v[j];
        if (rc < best) {
          best = rc;
          ei = i;
          ej = j;
          if (bland) break;
        }
      }
    }
    if (ei < 0) {
      double worst = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
          worst = std::min(worst, cost(i, j) - u[i] - v[j]);
      dual_residual = -worst;
      break;
    }

    std::vector<int> path = tree_path(ei, ej);
    // entering cell gets +theta; path cells alternate -,+,-,... starting at -
    double theta = kInf;
    int leave_pos = -1;
    for (size_t k = 0; k < path.size(); k += 2) {
      const auto& c = basis[path[k]];
      bool better = c.flow < theta;
      if (!better && c.flow == theta && leave_pos >= 0) {
        const auto& l = basis[path[leave_pos]];
        better = c.i < l.i || (c.i == l.i && c.j < l.j);
      }
      if (better) {
        theta = c.flow;
        leave_pos = static_cast<int>(k);
      }
    }
    for (size_t k = 0; k < path.size(); ++k) {
      if (k % 2 == 0) basis[path[k]].flow -= theta;
      else basis[path[k]].flow += theta;
      if (basis[path[k]].flow < 0.0) basis[path[k]].flow = 0.0;
    }
    basis[path[leave_pos]] = {ei, ej, theta};
    rebuild_adjacency();
  }

  Mat pi(n, m);
  for (const auto& c : basis) pi(c.i, c.j) += c.flow;
  double value = 0.0;
  for (const auto& c : basis) value += c.flow * cost(c.i, c.j);
  OtSolution out;
  out.plan = make_coupling(std::move(pi), mu, nu);
  out.value = value;
  out.dual_residual = dual_residual;
  return out;
}

}  // namespace detail

// Exact discrete OT: optimal coupling and objective value for the given cost
// matrix. Zero-weight atoms are dropped before solving and restored as empty
// rows/columns afterwards.
inline OtSolution solve_ot_exact(const Mat& cost, const std::vector<double>& mu,
                                 const std::vector<double>& nu) {
  const int n = static_cast<int>(mu.size());
  const int m = static_cast<int>(nu.size());
  require(cost.rows == n && cost.cols == m, "solve_ot_exact: cost shape mismatch");
  double smu = 0.0, snu = 0.0;
  for (double x : mu) {
    require(x >= 0.0, "solve_ot_exact: negative weight");
    smu += x;
  }
  for (double x : nu) {
    require(x >= 0.0, "solve_ot_exact: negative weight");
    snu += x;
  }
  if (std::abs(smu - snu) > 1e-9) throw ZgwError("solve_ot_exact: infeasible marginals");

  std::vector<int> ri, cj;
  for (int i = 0; i < n; ++i)
    if (mu[i] > 0.0) ri.push_back(i);
  for (int j = 0; j < m; ++j)
    if (nu[j] > 0.0) cj.push_back(j);
  require(!ri.empty() && !cj.empty(), "solve_ot_exact: empty marginals");

  Mat sub_cost(static_cast<int>(ri.size()), static_cast<int>(cj.size()));
  std::vector<double> sub_mu(ri.size()), sub_nu(cj.size());
  for (size_t i = 0; i < ri.size(); ++i) sub_mu[i] = mu[ri[i]];
  for (size_t j = 0; j < cj.size(); ++j) sub_nu[j] = nu[cj[j]];
  for (size_t i = 0; i < ri.size(); ++i)
    for (size_t j = 0; j < cj.size(); ++j)
      sub_cost(static_cast<int>(i), static_cast<int>(j)) = cost(ri[i], cj[j]);

  OtSolution sub = detail::transport_simplex(sub_cost, sub_mu, sub_nu);

  Mat pi(n, m);
  for (size_t i = 0; i < ri.size(); ++i)
    for (size_t j = 0; j < cj.size(); ++j)
      pi(ri[i], cj[j]) = sub.plan.pi(static_cast<int>(i), static_cast<int>(j));
  OtSolution out;
  out.plan = make_coupling(std::move(pi), mu, nu);
  out.value = sub.value;
  out.dual_residual = sub.dual_residual;
  return out;
}

// W_p between empirical measures on the line via the monotone coupling.
inline double solve_ot_1d(std::vector<double> xs, std::vector<double> xw, std::vector<double> ys,
                          std::vector<double> yw, double p) {
  require(xs.size() == xw.size() && ys.size() == yw.size(), "solve_ot_1d: size mismatch");
  require(p >= 1.0 && std::isfinite(p), "solve_ot_1d: p must lie in [1, inf)");
  double sx = 0.0, sy = 0.0;
  for (double w : xw) sx += w;
  for (double w : yw) sy += w;
  if (std::abs(sx - sy) > 1e-9) throw ZgwError("solve_ot_1d: marginal mismatch");

  auto sort_drop = [](std::vector<double>& s, std::vector<double>& w) {
    std::vector<int> idx(s.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return s[a] < s[b]; });
    std::vector<double> s2, w2;
    for (int i : idx) {
      if (w[i] <= 0.0) continue;
      s2.push_back(s[i]);
      w2.push_back(w[i]);
    }
    s = std::move(s2);
    w = std::move(w2);
  };
  sort_drop(xs, xw);
  sort_drop(ys, yw);
  return detail::wasserstein_1d_sorted(xs, xw, ys, yw, p);
}

// W_inf between empirical measures on the line (monotone coupling maximum).
inline double solve_ot_1d_inf(std::vector<double> xs, std::vector<double> xw,
                              std::vector<double> ys, std::vector<double> yw) {
  require(xs.size() == xw.size() && ys.size() == yw.size(), "solve_ot_1d_inf: size mismatch");
  double sx = 0.0, sy = 0.0;
  for (double w : xw) sx += w;
  for (double w : yw) sy += w;
  if (std::abs(sx - sy) > 1e-9) throw ZgwError("solve_ot_1d_inf: marginal mismatch");
  auto sort_drop = [](std::vector<double>& s, std::vector<double>& w) {
    std::vector<int> idx(s.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return s[a] < s[b]; });
    std::vector<double> s2, w2;
    for (int i : idx) {
      if (w[i] <= 0.0) continue;
      s2.push_back(s[i]);
      w2.push_back(w[i]);
    }
    s = std::move(s2);
    w = std::move(w2);
  };
  sort_drop(xs, xw);
  sort_drop(ys, yw);
  return detail::wasserstein_1d_inf_sorted(xs, xw, ys, yw);
}

namespace detail {

// Bipartite max-flow feasibility: can a coupling of mu, nu be supported on
// the allowed edge set? Edmonds-Karp with real capacities; graph sizes here
// are tiny.
inline bool coupling_feasible(const std::vector<double>& mu, const std::vector<double>& nu,
                              const std::vector<std::vector<char>>& allowed) {
  const int n = static_cast<int>(mu.size());
  const int m = static_cast<int>(nu.size());
  const int S = n + m, T = n + m + 1, N = n + m + 2;
  // capacity matrix (dense; n + m <= a few hundred in practice)
  std::vector<std::vector<double>> cap(N, std::vector<double>(N, 0.0));
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    cap[S][i] = mu[i];
    total += mu[i];
  }
  for (int j = 0; j < m; ++j) cap[n + j][T] = nu[j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (allowed[i][j]) cap[i][n + j] = 2.0;  // effectively unbounded

  double flow = 0.0;
  std::vector<int> parent(N);
  while (true) {
    std::fill(parent.begin(), parent.end(), -1);
    parent[S] = S;
    std::deque<int> queue = {S};
    while (!queue.empty() && parent[T] < 0) {
      int x = queue.front();
      queue.pop_front();
      for (int y = 0; y < N; ++y) {
        if (parent[y] < 0 && cap[x][y] > 1e-15) {
          parent[y] = x;
          queue.push_back(y);
        }
      }
    }
    if (parent[T] < 0) break;
    double aug = kInf;
    for (int y = T; y != S; y = parent[y]) aug = std::min(aug, cap[parent[y]][y]);
    for (int y = T; y != S; y = parent[y]) {
      cap[parent[y]][y] -= aug;
      cap[y][parent[y]] += aug;
    }
    flow += aug;
  }
  return flow >= total - 1e-9;
}

}  // namespace detail

// p = inf optimal transport: the smallest threshold tau among the cost
// entries such that some coupling lives on {cost <= tau}. Exact search over
// the finite set of cost values; feasibility by max-flow.
inline double solve_ot_bottleneck(const Mat& cost, const std::vector<double>& mu,
                                  const std::vector<double>& nu) {
  const int n = static_cast<int>(mu.size());
  const int m = static_cast<int>(nu.size());
  require(cost.rows == n && cost.cols == m, "solve_ot_bottleneck: cost shape mismatch");
  double smu = 0.0, snu = 0.0;
  for (double x : mu) smu += x;
  for (double x : nu) snu += x;
  if (std::abs(smu - snu) > 1e-9) throw ZgwError("solve_ot_bottleneck: infeasible marginals");

  std::vector<int> ri, cj;
  for (int i = 0; i < n; ++i)
    if (mu[i] > 0.0) ri.push_back(i);
  for (int j = 0; j < m; ++j)
    if (nu[j] > 0.0) cj.push_back(j);
  require(!ri.empty() && !cj.empty(), "solve_ot_bottleneck: empty marginals");

  std::vector<double> sub_mu, sub_nu;
  for (int i : ri) sub_mu.push_back(mu[i]);
  for (int j : cj) sub_nu.push_back(nu[j]);

  std::vector<double> values;
  values.reserve(ri.size() * cj.size());
  for (int i : ri)
    for (int j : cj) values.push_back(cost(i, j));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  auto feasible_at = [&](double tau) {
    std::vector<std::vector<char>> allowed(ri.size(), std::vector<char>(cj.size(), 0));
    for (size_t i = 0; i < ri.size(); ++i)
      for (size_t j = 0; j < cj.size(); ++j)
        allowed[i][j] = cost(ri[i], cj[j]) <= tau;
    return detail::coupling_feasible(sub_mu, sub_nu, allowed);
  };

  int lo = 0, hi = static_cast<int>(values.size()) - 1;
  require(feasible_at(values[hi]), "solve_ot_bottleneck: infeasible at max threshold");
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (feasible_at(values[mid])) hi = mid;
    else lo = mid + 1;
  }
  return values[lo];
}

struct SinkhornResult {
  Coupling plan;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
  // entropic values carry no optimality certificate, unlike solve_ot_exact
  static constexpr bool approximate = true;
};

// Entropic OT; approximate by construction and labeled as such. Used only as
// a warm start / large-instance fallback, never inside the bound hierarchy.
inline SinkhornResult sinkhorn(const Mat& cost, const std::vector<double>& mu,
                               const std::vector<double>& nu, double eps, int max_iter) {
  require(eps > 0.0, "sinkhorn: eps must be positive");
  const int n = static_cast<int>(mu.size());
  const int m = static_cast<int>(nu.size());
  require(cost.rows == n && cost.cols == m, "sinkhorn: cost shape mismatch");

  Mat K(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) K(i, j) = std::exp(-cost(i, j) / eps);

  std::vector<double> u(n, 1.0), v(m, 1.0);
  bool converged = false;
  int it = 0;
  for (; it < max_iter; ++it) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < m; ++j) s += K(i, j) * v[j];
      u[i] = (s > 0.0 && mu[i] > 0.0) ? mu[i] / s : 0.0;
    }
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += K(i, j) * u[i];
      v[j] = (s > 0.0 && nu[j] > 0.0) ? nu[j] / s : 0.0;
    }
    Mat pi(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) pi(i, j) = u[i] * K(i, j) * v[j];
    if (marginal_residual(pi, mu, nu) <= 1e-9) {
      converged = true;
      ++it;
      break;
    }
  }

  Mat pi(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) pi(i, j) = u[i] * K(i, j) * v[j];

  // Round to exact marginals: scale rows/cols down, then fill the residual
  // with an outer product.
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += pi(i, j);
    double f = (s > mu[i] && s > 0.0) ? mu[i] / s : 1.0;
    for (int j = 0; j < m; ++j) pi(i, j) *= f;
  }
  for (int j = 0; j < m; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += pi(i, j);
    double f = (s > nu[j] && s > 0.0) ? nu[j] / s : 1.0;
    for (int i = 0; i < n; ++i) pi(i, j) *= f;
  }
  std::vector<double> rdef(n, 0.0), cdef(m, 0.0);
  double total_def = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += pi(i, j);
    rdef[i] = std::max(0.0, mu[i] - s);
    total_def += rdef[i];
  }
  for (int j = 0; j < m; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += pi(i, j);
    cdef[j] = std::max(0.0, nu[j] - s);
  }
  if (total_def > 0.0) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) pi(i, j) += rdef[i] * cdef[j] / total_def;
  }

  SinkhornResult out;
  double value = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) value += pi(i, j) * cost(i, j);
  out.plan = make_coupling(std::move(pi), mu, nu);
  out.value = value;
  out.converged = converged;
  out.iterations = it;
  return out;
}

// W_p between finitely supported measures on (Z, d_Z). For p < inf this is
// the exact LP on costs d_Z^p (value then taken to the 1/p); for p = inf it
// is the bottleneck threshold on d_Z.
inline double wasserstein_in_Z(const MetricSpaceDescriptor& desc,
                               const std::vector<MetricPoint>& atoms_a,
                               const std::vector<double>& wa,
                               const std::vector<MetricPoint>& atoms_b,
                               const std::vector<double>& wb, double p) {
  require(atoms_a.size() == wa.size() && atoms_b.size() == wb.size(),
          "wasserstein_in_Z: size mismatch");
  std::vector<int> ia, ib;
  for (size_t i = 0; i < wa.size(); ++i)
    if (wa[i] > 0.0) ia.push_back(static_cast<int>(i));
  for (size_t j = 0; j < wb.size(); ++j)
    if (wb[j] > 0.0) ib.push_back(static_cast<int>(j));
  require(!ia.empty() && !ib.empty(), "wasserstein_in_Z: empty measure");

  Mat cost(static_cast<int>(ia.size()), static_cast<int>(ib.size()));
  for (size_t i = 0; i < ia.size(); ++i)
    for (size_t j = 0; j < ib.size(); ++j)
      cost(static_cast<int>(i), static_cast<int>(j)) =
          distance(desc, atoms_a[ia[i]], atoms_b[ib[j]]);

  std::vector<double> sa, sb;
  for (int i : ia) sa.push_back(wa[i]);
  for (int j : ib) sb.push_back(wb[j]);

  if (is_infinite(p)) return solve_ot_bottleneck(cost, sa, sb);

  Mat costp = cost;
  if (p != 1.0)
    for (double& c : costp.a) c = pow_p(c, p);
  double v = solve_ot_exact(costp, sa, sb).value;
  if (v < 0.0) v = 0.0;
  if (p == 1.0) return v;
  if (p == 2.0) return std::sqrt(v);
  return std::pow(v, 1.0 / p);
}

}  // namespace zgw
