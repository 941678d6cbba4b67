#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "zgw/common.hpp"
#include "zgw/network.hpp"
#include "zgw/ot.hpp"

namespace zgw {

struct SolveConfig {
  double p = 2.0;
  int restarts = 4;
  int max_outer_iters = 200;
  double tolerance = 1e-9;  // relative stopping tolerance
  uint64_t rng_seed = 0;
  enum class Init { Product, Random, Supplied, All } init = Init::All;
  std::optional<Coupling> supplied;
  double support_threshold = 1e-12;  // support cutoff for p = inf distortion
  // table cutoff: precompute the (n*m)^2 cost tensor when n*m is at most this
  int table_cap = 4096;
};

struct RestartTrace {
  int index = 0;
  std::string init;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// value is an upper bound on GW_p^Z (the 1/2 factor included) and always
// equals distortion(coupling)/2 of the concrete coupling returned.
struct SolveReport {
  double value = 0.0;
  Coupling coupling;
  std::vector<RestartTrace> trace;
  bool exact = false;
  bool converged = false;
  bool heuristic = false;  // set for the p = inf continuation path
};

namespace detail {

// Pairwise kernel discrepancies d_Z(omega_X(i,i'), omega_Y(j,j'))^p, either
// tabulated ((n*m)^2 doubles) or evaluated on demand. The general-metric
// objective admits no low-rank factorization, so the table is the only
// reuse available.
class DistortionCosts {
 public:
  DistortionCosts(const ZNetwork& X, const ZNetwork& Y, double p, int table_cap)
      : X_(X), Y_(Y), p_(p), n_(X.size()), m_(Y.size()) {
    if (static_cast<long>(n_) * m_ <= table_cap) {
      const long nm = static_cast<long>(n_) * m_;
      table_.resize(static_cast<size_t>(nm) * nm);
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < m_; ++j)
          for (int i2 = 0; i2 < n_; ++i2)
            for (int j2 = 0; j2 < m_; ++j2)
              table_[idx(i, j, i2, j2)] = eval(i, j, i2, j2);
    }
  }

  // d^p for p < inf; raw distance for p = inf
  double operator()(int i, int j, int i2, int j2) const {
    if (!table_.empty()) return table_[idx(i, j, i2, j2)];
    return eval(i, j, i2, j2);
  }

  int n() const { return n_; }
  int m() const { return m_; }

 private:
  size_t idx(int i, int j, int i2, int j2) const {
    const long nm = static_cast<long>(n_) * m_;
    return static_cast<size_t>((static_cast<long>(i) * m_ + j) * nm + static_cast<long>(i2) * m_ +
                               j2);
  }

  double eval(int i, int j, int i2, int j2) const {
    double d = distance(X_.space, X_.at(i, i2), Y_.at(j, j2));
    return is_infinite(p_) ? d : pow_p(d, p_);
  }

  const ZNetwork& X_;
  const ZNetwork& Y_;
  double p_;
  int n_, m_;
  std::vector<double> table_;
};

inline double quadratic_objective(const DistortionCosts& c, const Mat& pi) {
  double s = 0.0;
  const int n = c.n(), m = c.m();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      double w = pi(i, j);
      if (w == 0.0) continue;
      double inner = 0.0;
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < m; ++j2) {
          double w2 = pi(i2, j2);
          if (w2 != 0.0) inner += w2 * c(i, j, i2, j2);
        }
      s += w * inner;
    }
  return s;
}

// Gradient of the quadratic objective, both tensor slots:
// G(i,j) = sum_{i',j'} pi(i',j') (c[i,j,i',j'] + c[i',j',i,j]).
inline Mat objective_gradient(const DistortionCosts& c, const Mat& pi) {
  const int n = c.n(), m = c.m();
  Mat g(n, m);
  for (int i2 = 0; i2 < n; ++i2)
    for (int j2 = 0; j2 < m; ++j2) {
      double w = pi(i2, j2);
      if (w == 0.0) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) g(i, j) += w * (c(i, j, i2, j2) + c(i2, j2, i, j));
    }
  return g;
}

// Bilinear form sum_{ij,i'j'} A(i,j) B(i',j') c[i,j,i',j'].
inline double bilinear(const DistortionCosts& c, const Mat& A, const Mat& B) {
  double s = 0.0;
  const int n = c.n(), m = c.m();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      double w = A(i, j);
      if (w == 0.0) continue;
      double inner = 0.0;
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < m; ++j2) {
          double w2 = B(i2, j2);
          if (w2 != 0.0) inner += w2 * c(i, j, i2, j2);
        }
      s += w * inner;
    }
  return s;
}

// Random coupling: Dirichlet-style perturbation of the product coupling,
// a few scaling sweeps, then exact-marginal rounding.
inline Coupling random_coupling(const std::vector<double>& mu, const std::vector<double>& nu,
                                Rng& rng) {
  const int n = static_cast<int>(mu.size());
  const int m = static_cast<int>(nu.size());
  Mat pi(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) pi(i, j) = mu[i] * nu[j] * (0.05 + rng.exponential());
  for (int sweep = 0; sweep < 60; ++sweep) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < m; ++j) s += pi(i, j);
      if (s > 0.0)
        for (int j = 0; j < m; ++j) pi(i, j) *= mu[i] / s;
    }
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += pi(i, j);
      if (s > 0.0)
        for (int i = 0; i < n; ++i) pi(i, j) *= nu[j] / s;
    }
  }
  // round to exact marginals
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
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += pi(i, j);
    rdef[i] = std::max(0.0, mu[i] - s);
    total += rdef[i];
  }
  for (int j = 0; j < m; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += pi(i, j);
    cdef[j] = std::max(0.0, nu[j] - s);
  }
  if (total > 0.0)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) pi(i, j) += rdef[i] * cdef[j] / total;
  return make_coupling(std::move(pi), mu, nu);
}

}  // namespace detail

inline void check_same_space(const ZNetwork& X, const ZNetwork& Y) {
  if (!(X.space == Y.space))
    throw DescriptorMismatch("networks live over different target spaces");
}

// dis_p^Z(pi): the L^p(pi x pi) norm of d_Z(omega_X x omega_Y). For p = inf
// the maximum runs over pairs whose coupling mass exceeds the support
// threshold tau.
inline double distortion(const ZNetwork& X, const ZNetwork& Y, const Coupling& pi, double p,
                         double tau = 1e-12) {
  check_same_space(X, Y);
  const int n = X.size(), m = Y.size();
  require(pi.pi.rows == n && pi.pi.cols == m, "distortion: coupling shape mismatch");
  require(marginal_residual(pi.pi, X.weights, Y.weights) <= 1e-9,
          "distortion: coupling does not couple the network weights");

  if (is_infinite(p)) {
    double mx = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        if (pi.pi(i, j) <= tau) continue;
        for (int i2 = 0; i2 < n; ++i2)
          for (int j2 = 0; j2 < m; ++j2) {
            if (pi.pi(i2, j2) <= tau) continue;
            mx = std::max(mx, distance(X.space, X.at(i, i2), Y.at(j, j2)));
          }
      }
    return mx;
  }

  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      double w = pi.pi(i, j);
      if (w == 0.0) continue;
      double inner = 0.0;
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < m; ++j2) {
          double w2 = pi.pi(i2, j2);
          if (w2 == 0.0) continue;
          inner += w2 * pow_p(distance(X.space, X.at(i, i2), Y.at(j, j2)), p);
        }
      s += w * inner;
    }
  if (p == 1.0) return s;
  if (p == 2.0) return std::sqrt(s);
  return std::pow(s, 1.0 / p);
}

// Exact value when at least one side carries a Dirac measure: the product
// coupling is the only coupling, so GW equals half its distortion.
inline SolveReport gw_exact_dirac(const ZNetwork& X, const ZNetwork& Y, double p,
                                  double tau = 1e-12) {
  check_same_space(X, Y);
  require(has_dirac_weights(X) || has_dirac_weights(Y),
          "gw_exact_dirac: neither side carries a Dirac measure");
  Coupling prod = product_coupling(X.weights, Y.weights);
  SolveReport rep;
  rep.value = 0.5 * distortion(X, Y, prod, p, tau);
  rep.coupling = std::move(prod);
  rep.exact = true;
  rep.converged = true;
  return rep;
}

namespace detail {

struct FwOutcome {
  Mat pi;
  double objective;  // sum pi pi c  (p-th power scale)
  int iterations = 0;
  bool converged = false;
};

// Conditional-gradient descent on the quadratic distortion objective:
// linearize at the current coupling, solve the linear OT problem exactly,
// then take the exact best step along the segment. Every iterate is feasible.
inline FwOutcome frank_wolfe(const DistortionCosts& costs, const std::vector<double>& mu,
                             const std::vector<double>& nu, Coupling start, int max_iters,
                             double tol) {
  FwOutcome out;
  out.pi = std::move(start.pi);
  out.objective = quadratic_objective(costs, out.pi);
  double scale = std::max(1.0, out.objective);
  for (int iter = 0; iter < max_iters; ++iter) {
    Mat grad = objective_gradient(costs, out.pi);
    Mat target = solve_ot_exact(grad, mu, nu).plan.pi;
    Mat delta(target.rows, target.cols);
    for (size_t k = 0; k < delta.a.size(); ++k) delta.a[k] = target.a[k] - out.pi.a[k];

    // F(pi + t delta) = F(pi) + t <grad, delta> + t^2 B(delta, delta)
    double lin = 0.0;
    for (size_t k = 0; k < delta.a.size(); ++k) lin += grad.a[k] * delta.a[k];
    if (lin >= -tol * scale) {
      out.converged = true;
      out.iterations = iter;
      break;
    }
    double quad = bilinear(costs, delta, delta);
    double t = 1.0;
    if (quad > 0.0) t = std::clamp(-lin / (2.0 * quad), 0.0, 1.0);
    else if (quad < 0.0) t = 1.0;  // concave along the segment: endpoint wins
    double next = out.objective + t * lin + t * t * quad;
    double at_one = out.objective + lin + quad;
    if (at_one < next) {
      t = 1.0;
      next = at_one;
    }
    if (t == 0.0) {
      out.converged = true;
      out.iterations = iter;
      break;
    }
    for (size_t k = 0; k < delta.a.size(); ++k) out.pi.a[k] += t * delta.a[k];
    double prev = out.objective;
    out.objective = next;  // exact quadratic along the segment
    out.iterations = iter + 1;
    if (prev - out.objective <= tol * scale) {
      out.converged = true;
      break;
    }
  }
  return out;
}

inline SolveReport solve_gw_finite_p(const ZNetwork& X, const ZNetwork& Y, const SolveConfig& cfg,
                                     double p) {
  const std::vector<double>& mu = X.weights;
  const std::vector<double>& nu = Y.weights;
  DistortionCosts costs(X, Y, p, cfg.table_cap);

  std::vector<std::pair<std::string, Coupling>> inits;
  switch (cfg.init) {
    case SolveConfig::Init::Product:
      inits.emplace_back("product", product_coupling(mu, nu));
      break;
    case SolveConfig::Init::Supplied:
      require(cfg.supplied.has_value(), "solve_gw: init strategy 'supplied' needs a coupling");
      inits.emplace_back("supplied", *cfg.supplied);
      break;
    case SolveConfig::Init::Random:
      break;
    case SolveConfig::Init::All:
      inits.emplace_back("product", product_coupling(mu, nu));
      if (cfg.supplied.has_value()) inits.emplace_back("supplied", *cfg.supplied);
      break;
  }
  for (int r = static_cast<int>(inits.size()); r < cfg.restarts; ++r) {
    Rng rng(derive_seed(cfg.rng_seed, static_cast<uint64_t>(r)));
    inits.emplace_back("random", random_coupling(mu, nu, rng));
  }
  if (static_cast<int>(inits.size()) > cfg.restarts)
    inits.resize(std::max<size_t>(1, cfg.restarts));

  SolveReport rep;
  double best_obj = kInf;
  for (int r = 0; r < static_cast<int>(inits.size()); ++r) {
    FwOutcome fw =
        frank_wolfe(costs, mu, nu, inits[r].second, cfg.max_outer_iters, cfg.tolerance);
    RestartTrace tr;
    tr.index = r;
    tr.init = inits[r].first;
    tr.iterations = fw.iterations;
    tr.converged = fw.converged;
    tr.value = 0.5 * (p == 1.0 ? fw.objective
                               : (p == 2.0 ? std::sqrt(std::max(0.0, fw.objective))
                                           : std::pow(std::max(0.0, fw.objective), 1.0 / p)));
    rep.trace.push_back(tr);
    if (fw.objective < best_obj) {
      best_obj = fw.objective;
      rep.coupling = make_coupling(std::move(fw.pi), mu, nu);
      rep.converged = fw.converged;
    }
  }
  // Certify: report distortion of the concrete coupling, never the raw
  // objective of the iteration.
  rep.value = 0.5 * distortion(X, Y, rep.coupling, p, cfg.support_threshold);
  return rep;
}

}  // namespace detail

// Upper-bound solver for GW_p^Z. For finite p this is multi-restart
// conditional gradient with exact inner LPs; the reported value is always
// distortion(coupling)/2 for the concrete feasible coupling returned. The
// Dirac fast path is exact. For p = inf there is no smooth surrogate; the
// solver runs a p = 2 -> 8 -> 32 continuation and reports the inf-distortion
// of the best coupling found, flagged heuristic.
inline SolveReport solve_gw(const ZNetwork& X, const ZNetwork& Y, const SolveConfig& cfg) {
  check_same_space(X, Y);
  if (X.size() > size_cap() || Y.size() > size_cap())
    throw SizeCapError("solve_gw: network size exceeds cap");
  require(cfg.restarts >= 1 && cfg.max_outer_iters >= 1, "solve_gw: bad iteration counts");
  require(cfg.support_threshold > 0.0 && cfg.support_threshold < 1.0,
          "solve_gw: support threshold out of range");
  if (cfg.supplied.has_value()) {
    require(cfg.supplied->pi.rows == X.size() && cfg.supplied->pi.cols == Y.size(),
            "solve_gw: supplied coupling shape mismatch");
    require(marginal_residual(cfg.supplied->pi, X.weights, Y.weights) <= 1e-9,
            "solve_gw: supplied coupling has wrong marginals");
  }

  if (has_dirac_weights(X) || has_dirac_weights(Y))
    return gw_exact_dirac(X, Y, cfg.p, cfg.support_threshold);

  if (is_infinite(cfg.p)) {
    // no smooth surrogate: continuation through growing exponents, then pick
    // the best candidate by the actual inf-distortion (the supplied and
    // product couplings stay in the running)
    std::vector<Coupling> candidates;
    candidates.push_back(product_coupling(X.weights, Y.weights));
    if (cfg.supplied.has_value()) candidates.push_back(*cfg.supplied);
    SolveConfig stage = cfg;
    SolveReport rep;
    for (double q : {2.0, 8.0, 32.0}) {
      rep = detail::solve_gw_finite_p(X, Y, stage, q);
      candidates.push_back(rep.coupling);
      stage.init = SolveConfig::Init::All;
      stage.supplied = rep.coupling;
    }
    double best = kInf;
    for (auto& cand : candidates) {
      double v = 0.5 * distortion(X, Y, cand, kInf, cfg.support_threshold);
      if (v < best) {
        best = v;
        rep.coupling = std::move(cand);
      }
    }
    rep.value = best;
    rep.heuristic = true;
    rep.exact = false;
    return rep;
  }

  return detail::solve_gw_finite_p(X, Y, cfg, cfg.p);
}

// Exhaustive grid oracle over the transportation polytope, parameterized by
// its free (n-1) x (m-1) block; grid points that violate feasibility are
// skipped, endpoints are included so polytope vertices are always visited.
// Returns min distortion/2: an upper bound converging to GW as the
// resolution grows.
inline double brute_force_gw(const ZNetwork& X, const ZNetwork& Y, double p, int resolution,
                             double tau = 1e-12) {
  check_same_space(X, Y);
  const int n = X.size(), m = Y.size();
  const int dof = (n - 1) * (m - 1);
  require(dof <= 4, "brute_force_gw: dimension too large");
  require(resolution >= 10, "brute_force_gw: resolution must be at least 10");

  const std::vector<double>& mu = X.weights;
  const std::vector<double>& nu = Y.weights;

  detail::DistortionCosts costs(X, Y, p, 4096);

  std::vector<std::pair<int, int>> free_cells;
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j + 1 < m; ++j) free_cells.emplace_back(i, j);

  double best = kInf;
  Mat pi(n, m);
  std::vector<int> steps(free_cells.size(), 0);

  auto evaluate = [&]() {
    // fill determined entries from the free block
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
    double val;
    if (is_infinite(p)) {
      double mx = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
          if (pi(i, j) <= tau) continue;
          for (int i2 = 0; i2 < n; ++i2)
            for (int j2 = 0; j2 < m; ++j2)
              if (pi(i2, j2) > tau) mx = std::max(mx, costs(i, j, i2, j2));
        }
      val = mx;
    } else {
      double s = detail::quadratic_objective(costs, pi);
      val = (p == 1.0) ? s : (p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p));
    }
    best = std::min(best, val);
  };

  if (free_cells.empty()) {
    evaluate();
    return 0.5 * best;
  }

  // odometer over the grid
  while (true) {
    for (size_t k = 0; k < free_cells.size(); ++k) {
      auto [i, j] = free_cells[k];
      double ub = std::min(mu[i], nu[j]);
      pi(i, j) = ub * steps[k] / resolution;
    }
    evaluate();
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
  require(std::isfinite(best), "brute_force_gw: no feasible grid point");
  return 0.5 * best;
}

}  // namespace zgw
