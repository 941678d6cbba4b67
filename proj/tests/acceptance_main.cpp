// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "zgw/cli.hpp"
#include "zgw/zgw.hpp"

using namespace zgw;

namespace {

struct Criterion {
  int id;
  std::string label;
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
  long checks = 0;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void expect(bool ok, const std::string& why) {
    ++checks;
    if (!ok) fail(why);
  }
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

constexpr uint64_t kSeed = 0xACCE97;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

ZNetwork dirac_net(const MetricSpaceDescriptor& d, const MetricPoint& z) {
  return make_network(d, {"x"}, {1.0}, {z});
}

// ---------------------------------------------------------------------------
// 1. metric axioms: 500 random triples per variant
Criterion criterion_metric_axioms() {
  Criterion c{1, "metric axioms, 500 triples x 11 variants"};
  Timer timer;
  for (const auto& d : sampling::variant_catalog()) {
    Rng rng(derive_seed(kSeed, 10 + static_cast<uint64_t>(d.kind)));
    for (int t = 0; t < 500; ++t) {
      MetricPoint a = sampling::random_point(d, rng);
      MetricPoint b = sampling::random_point(d, rng);
      MetricPoint z = sampling::random_point(d, rng);
      double ab = distance(d, a, b);
      double ba = distance(d, b, a);
      double az = distance(d, a, z);
      double bz = distance(d, b, z);
      c.expect(ab == ba, "symmetry violated: " + sampling::variant_name(d));
      c.expect(distance(d, a, a) == 0.0, "identity violated: " + sampling::variant_name(d));
      c.expect(az <= ab + bz + 1e-9 * std::max(1.0, ab + bz),
               "triangle violated: " + sampling::variant_name(d));
    }
  }
  c.seconds = timer.seconds();
  c.expect(c.seconds < 10.0, "runtime limit 10 s exceeded");
  return c;
}

// 2. exact GW triangle inequality on Dirac triples
Criterion criterion_dirac_triangle() {
  Criterion c{2, "GW triangle on 200 Dirac triples x 11 variants"};
  Timer timer;
  for (const auto& d : sampling::variant_catalog()) {
    Rng rng(derive_seed(kSeed, 40 + static_cast<uint64_t>(d.kind)));
    for (int t = 0; t < 200; ++t) {
      ZNetwork A = dirac_net(d, sampling::random_point(d, rng));
      ZNetwork B = dirac_net(d, sampling::random_point(d, rng));
      ZNetwork Z = dirac_net(d, sampling::random_point(d, rng));
      for (double p : {1.0, 2.0, kInf}) {
        double ab = gw_exact_dirac(A, B, p).value;
        double bz = gw_exact_dirac(B, Z, p).value;
        double az = gw_exact_dirac(A, Z, p).value;
        c.expect(az <= ab + bz + 1e-12, "Dirac triangle violated: " + sampling::variant_name(d));
      }
    }
  }
  c.seconds = timer.seconds();
  return c;
}

// 3. closed-form pinned values
Criterion criterion_pinned_values() {
  Criterion c{3, "closed-form values: binary Dirac pair, staircase, kernel-gap bound"};
  Timer timer;

  // (a) binary Dirac pair: exactly 1/2 for p in {1, 2, inf}
  auto bin = discrete_space({"0", "1"});
  ZNetwork D0 = dirac_net(bin, label_point("0"));
  ZNetwork D1 = dirac_net(bin, label_point("1"));
  for (double p : {1.0, 2.0, kInf}) {
    c.expect(gw_exact_dirac(D0, D1, p).value == 0.5, "binary Dirac pair != 1/2");
    SolveConfig cfg;
    cfg.p = p;
    c.expect(solve_gw(D0, D1, cfg).value == 0.5, "solver misses the Dirac fast path");
  }

  // (b) staircase discretization at k = 100, p = 1, 5-point time grid
  {
    const int k = 100;
    auto staircase = [&](double t) {
      std::vector<MetricPoint> kernel;
      kernel.reserve(static_cast<size_t>(k) * k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          kernel.push_back(label_point((j + 1.0) / k <= t ? "0" : "1"));
      return make_network(bin, default_labels(k), std::vector<double>(k, 1.0 / k), kernel);
    };
    std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (size_t a = 0; a < grid.size(); ++a) {
      for (size_t b = a + 1; b < grid.size(); ++b) {
        ZNetwork Xs = staircase(grid[a]);
        ZNetwork Xt = staircase(grid[b]);
        Coupling diag = diagonal_coupling(Xs.weights);
        double upper = 0.5 * distortion(Xs, Xt, diag, 1.0);
        c.expect(upper <= (grid[b] - grid[a]) * 0.5 + 1e-9, "staircase bound violated");
      }
    }
    // endpoints collapse to the exact binary Dirac pair
    c.expect(gw_exact_dirac(dirac_net(bin, label_point("1")), dirac_net(bin, label_point("0")),
                            1.0)
                     .value == 0.5,
             "staircase endpoint distance != 1/2");
  }

  // (c) GW <= half the L^p kernel gap on shared carriers
  {
    auto catalog = sampling::variant_catalog();
    for (int t = 0; t < 100; ++t) {
      Rng rng(derive_seed(kSeed, 300 + t));
      const auto& d = catalog[t % catalog.size()];
      double p = std::vector<double>{1.0, 2.0, kInf}[t % 3];
      int n = 2 + rng.uniform_int(5);
      ZNetwork X = sampling::random_network(d, n, rng);
      std::vector<MetricPoint> other;
      for (int i = 0; i < n * n; ++i) other.push_back(sampling::random_point(d, rng));
      ZNetwork Y = make_network(d, X.labels, X.weights, other);
      LpAccum gap(p);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          gap.add(X.weights[i] * X.weights[j], distance(d, X.at(i, j), Y.at(i, j)));
      SolveConfig cfg;
      cfg.p = p;
      cfg.init = SolveConfig::Init::All;
      cfg.supplied = diagonal_coupling(X.weights);
      cfg.restarts = 2;
      c.expect(solve_gw(X, Y, cfg).value <= 0.5 * gap.value() + 1e-9,
               "kernel-gap upper bound violated: " + sampling::variant_name(d));
    }
  }

  c.seconds = timer.seconds();
  return c;
}

// 4. lower-bound hierarchy on random instances
Criterion criterion_hierarchy() {
  Criterion c{4, "bound hierarchy, 100 instances x 11 variants"};
  Timer timer;
  auto catalog = sampling::variant_catalog();
  for (size_t v = 0; v < catalog.size(); ++v) {
    const auto& d = catalog[v];
    for (int t = 0; t < 100; ++t) {
      Rng rng(derive_seed(kSeed, 1000 + 100 * v + t));
      double p = std::vector<double>{1.0, 2.0, kInf}[t % 3];
      int n = 2 + rng.uniform_int(7);
      int m = 2 + rng.uniform_int(7);
      ZNetwork X = sampling::random_network(d, n, rng);
      ZNetwork Y = sampling::random_network(d, m, rng);
      SolveConfig cfg;
      cfg.p = p;
      cfg.restarts = 2;
      cfg.max_outer_iters = 60;
      cfg.rng_seed = derive_seed(kSeed, 7000 + t);
      double upper = solve_gw(X, Y, cfg).value;
      BoundReport rep = bound_report(X, Y, p);
      const std::string tag = sampling::variant_name(d) + " p=" + fmt(p);
      c.expect(rep.ordering_violations.empty(), "chain ordering violated: " + tag);
      c.expect(rep.tlb >= rep.flb - 1e-9, "tlb < flb: " + tag);
      c.expect(rep.flb >= rep.szlb - 1e-9, "flb < szlb: " + tag);
      c.expect(upper >= rep.tlb - 1e-9, "solver < tlb: " + tag);
      c.expect(upper >= rep.slb - 1e-9, "solver < slb: " + tag);
    }
  }
  c.seconds = timer.seconds();
  c.expect(c.seconds < 60.0, "runtime limit 60 s exceeded");
  return c;
}

// 5. oracle equivalence on low-dimensional polytopes
Criterion criterion_oracle() {
  Criterion c{5, "solver vs grid oracle, 50 instances, dof <= 2"};
  Timer timer;
  std::vector<MetricSpaceDescriptor> spaces = {real_space(), lambda_inf_space(),
                                               lambda_q_space(2.0), euclidean_space(2, 2.0),
                                               discrete_space({"a", "b"})};
  for (int t = 0; t < 50; ++t) {
    Rng rng(derive_seed(kSeed, 2000 + t));
    const auto& d = spaces[t % spaces.size()];
    double p = (t % 2 == 0) ? 1.0 : 2.0;
    int n = (t % 3 == 1) ? 2 : (t % 3 == 2 ? 3 : 2);
    int m = (t % 3 == 1) ? 3 : (t % 3 == 2 ? 2 : 2);
    ZNetwork X = sampling::random_network(d, n, rng);
    ZNetwork Y = sampling::random_network(d, m, rng);
    int dof = (n - 1) * (m - 1);
    SolveConfig cfg;
    cfg.p = p;
    cfg.restarts = 16;
    cfg.rng_seed = derive_seed(kSeed, 2100 + t);
    double solver = solve_gw(X, Y, cfg).value;
    double oracle = brute_force_gw(X, Y, p, 1000 * dof);
    c.expect(std::abs(solver - oracle) <= 2e-3,
             "solver/oracle gap " + fmt(std::abs(solver - oracle)) + " on " +
                 sampling::variant_name(d));
  }
  c.seconds = timer.seconds();
  c.expect(c.seconds < 120.0, "runtime limit 120 s exceeded");
  return c;
}

// 6. Wasserstein realization through the doubled metric
Criterion criterion_wasserstein_realization() {
  Criterion c{6, "Wasserstein realization, 50 doubled-metric instances"};
  Timer timer;
  auto doubled = product_space({real_space()}, {2.0}, 1.0);
  for (int t = 0; t < 50; ++t) {
    Rng rng(derive_seed(kSeed, 3000 + t));
    double p = (t % 2 == 0) ? 1.0 : 2.0;
    int n = 2 + rng.uniform_int(5), m = 2 + rng.uniform_int(5);
    std::vector<double> xs(n), ys(m);
    for (double& x : xs) x = rng.uniform(-2.0, 2.0);
    for (double& y : ys) y = rng.uniform(-2.0, 2.0);
    std::vector<double> mu = sampling::random_weights(n, rng);
    std::vector<double> nu = sampling::random_weights(m, rng);
    std::vector<MetricPoint> kx, ky;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) kx.push_back(tuple_point({scalar_point(xs[i])}));
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) ky.push_back(tuple_point({scalar_point(ys[j])}));
    ZNetwork X = make_network(doubled, default_labels(n), mu, kx);
    ZNetwork Y = make_network(doubled, default_labels(m), nu, ky);
    SolveConfig cfg;
    cfg.p = p;
    cfg.restarts = 2;
    double gw = solve_gw(X, Y, cfg).value;
    double w = solve_ot_1d(xs, mu, ys, nu, p);
    c.expect(std::abs(gw - w) <= 1e-6, "GW != W_p, gap " + fmt(std::abs(gw - w)));
  }
  c.seconds = timer.seconds();
  return c;
}

// 7. fused flattening objective identity
Criterion criterion_fused() {
  Criterion c{7, "fused flattening integrand identity, 50 graph pairs"};
  Timer timer;
  auto psi = euclidean_space(2, 2.0);
  auto omega = real_space();
  auto random_graph = [&](int n, Rng& rng) {
    Mat phi(n, n);
    std::map<std::pair<int, int>, MetricPoint> ef;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && rng.uniform() < 0.6) {
          phi(i, j) = 0.2 + rng.uniform();
          ef.insert({{i, j}, scalar_point(rng.uniform(-1.0, 1.0))});
        }
    std::vector<MetricPoint> features;
    for (int i = 0; i < n; ++i)
      features.push_back(vector_point({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}));
    return make_attributed_graph(psi, omega, features, phi, ef,
                                 sampling::random_weights(n, rng));
  };

  for (int t = 0; t < 50; ++t) {
    Rng rng(derive_seed(kSeed, 4000 + t));
    int n = 2 + rng.uniform_int(3), m = 2 + rng.uniform_int(3);
    AttributedGraph gx = random_graph(n, rng);
    AttributedGraph gy = random_graph(m, rng);
    double q = 1.0 + rng.uniform(0.0, 2.0);
    double alpha = rng.uniform(0.0, 0.5), beta = rng.uniform(0.0, 0.5);
    double p = (t % 2 == 0) ? 1.0 : 2.0;
    MetricPoint fill = scalar_point(0.0);
    ZNetwork X = from_attributed_graph_fused(gx, FusedParams{alpha, beta, q}, fill);
    ZNetwork Y = from_attributed_graph_fused(gy, FusedParams{alpha, beta, q}, fill);

    for (int cpl = 0; cpl < 20; ++cpl) {
      Coupling pi = detail::random_coupling(X.weights, Y.weights, rng);
      double via_z = distortion(X, Y, pi, p);
      // FNGW integrand, straight from its definition
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
          for (int i2 = 0; i2 < n; ++i2)
            for (int j2 = 0; j2 < m; ++j2) {
              auto ex = gx.edge_features.find({i, i2});
              auto ey = gy.edge_features.find({j, j2});
              const MetricPoint& ox = ex != gx.edge_features.end() ? ex->second : fill;
              const MetricPoint& oy = ey != gy.edge_features.end() ? ey->second : fill;
              double integrand =
                  (1.0 - alpha - beta) *
                      std::pow(distance(psi, gx.features[i], gy.features[j]), q) +
                  alpha * std::pow(distance(omega, ox, oy), q) +
                  beta * std::pow(std::abs(gx.phi(i, i2) - gy.phi(j, j2)), q);
              s += pi.pi(i, j) * pi.pi(i2, j2) * std::pow(integrand, p / q);
            }
      double direct = std::pow(s, 1.0 / p);
      c.expect(std::abs(via_z - direct) <= 1e-12,
               "FNGW integrand mismatch " + fmt(std::abs(via_z - direct)));
    }

    // specializations: alpha=0, beta=1 equals the plain kernel objective;
    // alpha=1, beta=0 over a complete edge set equals the edge-feature
    // objective
    {
      ZNetwork X01 = from_attributed_graph_fused(gx, FusedParams{0.0, 1.0, q}, fill);
      ZNetwork Y01 = from_attributed_graph_fused(gy, FusedParams{0.0, 1.0, q}, fill);
      std::vector<MetricPoint> kx, ky;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) kx.push_back(scalar_point(gx.phi(i, j)));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) ky.push_back(scalar_point(gy.phi(i, j)));
      ZNetwork PX = make_network(real_space(), default_labels(n), gx.weights, kx);
      ZNetwork PY = make_network(real_space(), default_labels(m), gy.weights, ky);
      Coupling pi = detail::random_coupling(X.weights, Y.weights, rng);
      Coupling pi2 = make_coupling(pi.pi, PX.weights, PY.weights);
      c.expect(std::abs(distortion(X01, Y01, pi, p) - distortion(PX, PY, pi2, p)) <= 1e-12,
               "standard-GW specialization mismatch");
    }
    {
      AttributedGraph cx = gx, cy = gy;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (cx.phi(i, j) == 0.0) {
            cx.phi(i, j) = 1.0;
            cx.edge_features.insert({{i, j}, scalar_point(rng.uniform(-1.0, 1.0))});
          }
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (cy.phi(i, j) == 0.0) {
            cy.phi(i, j) = 1.0;
            cy.edge_features.insert({{i, j}, scalar_point(rng.uniform(-1.0, 1.0))});
          }
      ZNetwork X10 = from_attributed_graph_fused(cx, FusedParams{1.0, 0.0, q}, fill);
      ZNetwork Y10 = from_attributed_graph_fused(cy, FusedParams{1.0, 0.0, q}, fill);
      std::vector<MetricPoint> kx, ky;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) kx.push_back(cx.edge_features.at({i, j}));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) ky.push_back(cy.edge_features.at({i, j}));
      ZNetwork OX = make_network(omega, default_labels(n), cx.weights, kx);
      ZNetwork OY = make_network(omega, default_labels(m), cy.weights, ky);
      Coupling pi = detail::random_coupling(X10.weights, Y10.weights, rng);
      Coupling pi2 = make_coupling(pi.pi, OX.weights, OY.weights);
      c.expect(std::abs(distortion(X10, Y10, pi, p) - distortion(OX, OY, pi2, p)) <= 1e-12,
               "Z-GW specialization mismatch");
    }
  }
  c.seconds = timer.seconds();
  return c;
}

// 8. landmark sandwich on exact pairs
Criterion criterion_sandwich() {
  Criterion c{8, "landmark sandwich, 50 Dirac pairs x 11 variants"};
  Timer timer;
  auto catalog = sampling::variant_catalog();
  for (size_t v = 0; v < catalog.size(); ++v) {
    const auto& d = catalog[v];
    for (int t = 0; t < 50; ++t) {
      Rng rng(derive_seed(kSeed, 5000 + 100 * v + t));
      ZNetwork X = sampling::random_network(d, 2, rng, /*dirac=*/true);
      ZNetwork Y = sampling::random_network(d, 2, rng, /*dirac=*/true);
      double gw_z = gw_exact_dirac(X, Y, 2.0).value;
      std::vector<MetricPoint> pool = kernel_values(X);
      for (const auto& k : kernel_values(Y)) pool.push_back(k);
      for (double r : {1.0, 2.0, kInf}) {
        double prev_h = kInf;
        for (int k : {1, 2, 4}) {
          LandmarkSet Q = landmark_fps(d, pool, k, derive_seed(kSeed, 5500 + t));
          SolveConfig cfg;
          cfg.p = 2.0;
          SandwichReport rep = sandwich(X, Y, Q, 2.0, r, cfg);
          const std::string tag = sampling::variant_name(d) + " r=" + fmt(r);
          c.expect(rep.exact, "sandwich solve not exact: " + tag);
          double factor = is_infinite(r) ? 1.0 : std::pow(static_cast<double>(k), -1.0 / r);
          c.expect(factor * rep.rn_value <= gw_z + 1e-9, "sandwich lower violated: " + tag);
          c.expect(gw_z <= rep.rn_value + rep.hausdorff_term + 1e-9,
                   "sandwich upper violated: " + tag);
          c.expect(rep.hausdorff_term <= prev_h + 1e-15, "Hausdorff term grew with k: " + tag);
          prev_h = rep.hausdorff_term;
        }
      }
    }
  }
  c.seconds = timer.seconds();
  return c;
}

// 9. paths and geodesics
Criterion criterion_paths() {
  Criterion c{9, "paths: endpoint certificates, Hoelder, geodesic identity"};
  Timer timer;

  // endpoint certificates for mixture and contraction across the catalog
  for (const auto& d : sampling::variant_catalog()) {
    Rng rng(derive_seed(kSeed, 6000 + static_cast<uint64_t>(d.kind)));
    ZNetwork X = sampling::random_network(d, 3, rng);
    ZNetwork Y = sampling::random_network(d, 2, rng);
    MetricPoint fill = sampling::random_point(d, rng);

    ZNetwork at0 = mixture_path(X, Y, fill, 0.0);
    Mat r0(X.size(), at0.size());
    for (int i = 0; i < X.size(); ++i) r0(i, i) = X.weights[i];
    c.expect(distortion(X, at0, make_coupling(std::move(r0), X.weights, at0.weights), 2.0) <=
                 1e-12,
             "mixture 0-endpoint certificate: " + sampling::variant_name(d));

    ZNetwork at1 = mixture_path(X, Y, fill, 1.0);
    Mat r1(Y.size(), at1.size());
    for (int j = 0; j < Y.size(); ++j) r1(j, X.size() + j) = Y.weights[j];
    c.expect(distortion(Y, at1, make_coupling(std::move(r1), Y.weights, at1.weights), 2.0) <=
                 1e-12,
             "mixture 1-endpoint certificate: " + sampling::variant_name(d));

    ZNetwork con0 = contraction_path(X, fill, 0.0);
    Mat rc(X.size(), con0.size());
    for (int i = 0; i < X.size(); ++i) rc(i, i) = X.weights[i];
    c.expect(distortion(X, con0, make_coupling(std::move(rc), X.weights, con0.weights), 2.0) <=
                 1e-12,
             "contraction 0-endpoint certificate: " + sampling::variant_name(d));
  }

  // Hoelder estimate via the explicit contraction coupling at 25 time pairs
  {
    Rng rng(derive_seed(kSeed, 6100));
    ZNetwork X = sampling::random_network(euclidean_space(2, 2.0), 4, rng);
    MetricPoint z = sampling::random_point(euclidean_space(2, 2.0), rng);
    std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (double p : {1.0, 2.0}) {
      double size_p = network_size(X, p, z);
      for (double s : grid) {
        for (double t : grid) {
          double lo = std::min(s, t), hi = std::max(s, t);
          ZNetwork Xs = contraction_path(X, z, lo);
          ZNetwork Xt = contraction_path(X, z, hi);
          Coupling plan = contraction_time_coupling(X, lo, hi);
          double dis = distortion(Xs, Xt, plan, p);
          c.expect(0.5 * dis <= std::pow(3.0 * (hi - lo), 1.0 / p) / 2.0 * size_p + 1e-9,
                   "contraction Hoelder estimate violated");
        }
      }
    }
  }

  // geodesic distortion identity on 50 random geodesic-target instances
  {
    std::vector<MetricSpaceDescriptor> spaces = {
        real_space(), euclidean_space(2, 2.0),
        product_space({real_space(), euclidean_space(2, 2.0)}, {1.0, 2.0}, 2.0)};
    for (int t = 0; t < 50; ++t) {
      Rng rng(derive_seed(kSeed, 6200 + t));
      const auto& d = spaces[t % spaces.size()];
      double p = std::vector<double>{1.0, 2.0, kInf}[t % 3];
      ZNetwork X = sampling::random_network(d, 2 + rng.uniform_int(3), rng);
      ZNetwork Y = sampling::random_network(d, 2 + rng.uniform_int(3), rng);
      Coupling pi = detail::random_coupling(X.weights, Y.weights, rng);
      GeodesicCheck check = verify_geodesic(X, Y, pi, p, {0.0, 0.3, 0.5, 1.0});
      c.expect(check.max_deviation <= 1e-9,
               "geodesic distortion identity deviation " + fmt(check.max_deviation));
    }
  }

  c.seconds = timer.seconds();
  return c;
}

// 10. blow-up invariance
Criterion criterion_blow_up() {
  Criterion c{10, "blow-up invariance, 100 networks"};
  Timer timer;
  auto catalog = sampling::variant_catalog();
  for (int t = 0; t < 100; ++t) {
    Rng rng(derive_seed(kSeed, 8000 + t));
    const auto& d = catalog[t % catalog.size()];
    int n = 2 + rng.uniform_int(4);
    ZNetwork X = sampling::random_network(d, n, rng);
    std::vector<int> mult(n);
    for (int& m : mult) m = 1 + rng.uniform_int(3);
    ZNetwork blown = blow_up(X, mult);
    Coupling collapse = collapse_coupling(X, mult);
    MetricPoint z0 = X.at(0, 0);
    for (double p : {1.0, 2.0, kInf}) {
      c.expect(distortion(X, blown, collapse, p) <= 1e-12,
               "collapse coupling distortion nonzero: " + sampling::variant_name(d));
      c.expect(std::abs(network_size(X, p, z0) - network_size(blown, p, z0)) <= 1e-12,
               "size not preserved: " + sampling::variant_name(d));
      LpAccum a(p), b(p);
      auto ea = eccentricity_out(X, p, z0);
      auto eb = eccentricity_out(blown, p, z0);
      for (int i = 0; i < X.size(); ++i) a.add(X.weights[i], ea[i]);
      for (int i = 0; i < blown.size(); ++i) b.add(blown.weights[i], eb[i]);
      c.expect(std::abs(a.value() - b.value()) <= 1e-12,
               "eccentricity norm not preserved: " + sampling::variant_name(d));
    }
    double mass = 0.0;
    for (double w : blown.weights) mass += w;
    c.expect(std::abs(mass - 1.0) <= 1e-12, "mass not preserved");
  }
  c.seconds = timer.seconds();
  return c;
}

// 11. CLI determinism on 10 fixtures
Criterion criterion_determinism() {
  Criterion c{11, "cmd dist byte-identical across reruns, 10 fixtures"};
  Timer timer;
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "zgw_acceptance_fixtures";
  fs::create_directories(dir);
  auto catalog = sampling::variant_catalog();
  for (int t = 0; t < 10; ++t) {
    Rng rng(derive_seed(kSeed, 9000 + t));
    const auto& d = catalog[t % catalog.size()];
    ZNetwork X = sampling::random_network(d, 2 + rng.uniform_int(2), rng);
    ZNetwork Y = sampling::random_network(d, 2 + rng.uniform_int(2), rng);
    fs::path pa = dir / ("fix" + std::to_string(t) + "a.json");
    fs::path pb = dir / ("fix" + std::to_string(t) + "b.json");
    std::ofstream(pa) << dump_report(network_to_json(X));
    std::ofstream(pb) << dump_report(network_to_json(Y));
    std::vector<std::string> args = {"dist",   pa.string(),       pb.string(), "--seed",
                                     std::to_string(t), "--restarts", "3"};
    std::ostringstream out1, out2, err;
    int c1 = cli::run_command(args, out1, err);
    int c2 = cli::run_command(args, out2, err);
    c.expect(c1 == 0 && c2 == 0, "dist run failed");
    c.expect(out1.str() == out2.str(), "outputs differ between identical runs");
    c.expect(!out1.str().empty(), "empty output");
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  c.seconds = timer.seconds();
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  results.push_back(criterion_metric_axioms());
  results.push_back(criterion_dirac_triangle());
  results.push_back(criterion_pinned_values());
  results.push_back(criterion_hierarchy());
  results.push_back(criterion_oracle());
  results.push_back(criterion_wasserstein_realization());
  results.push_back(criterion_fused());
  results.push_back(criterion_sandwich());
  results.push_back(criterion_paths());
  results.push_back(criterion_blow_up());
  results.push_back(criterion_determinism());

  bool all = true;
  for (const auto& c : results) {
    std::printf("%s criterion %2d: %s (%ld checks, %.2fs)%s%s\n", c.pass ? "PASS" : "FAIL", c.id,
                c.label.c_str(), c.checks, c.seconds, c.pass ? "" : " -- ",
                c.pass ? "" : c.detail.c_str());
    all = all && c.pass;
  }
  std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES");
  return all ? 0 : 1;
}
