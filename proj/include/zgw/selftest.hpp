#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "zgw/approx.hpp"
#include "zgw/bounds.hpp"
#include "zgw/gw.hpp"
#include "zgw/paths.hpp"
#include "zgw/sampling.hpp"

namespace zgw {

struct SelftestResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Compact invariant suites behind `zgw selftest`. These are reduced-count
// versions of the checks the full test suite runs.
inline std::vector<SelftestResult> run_selftest(uint64_t seed = 0) {
  std::vector<SelftestResult> results;
  auto record = [&](const std::string& name, bool pass, const std::string& detail = "") {
    results.push_back({name, pass, detail});
  };

  // metric axioms on every catalog variant
  for (const auto& desc : sampling::variant_catalog()) {
    Rng rng(derive_seed(seed, 100 + results.size()));
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 60 && ok; ++trial) {
      MetricPoint a = sampling::random_point(desc, rng);
      MetricPoint b = sampling::random_point(desc, rng);
      MetricPoint c = sampling::random_point(desc, rng);
      double ab = distance(desc, a, b);
      double ba = distance(desc, b, a);
      double aa = distance(desc, a, a);
      double ac = distance(desc, a, c);
      double bc = distance(desc, b, c);
      if (ab != ba) {
        ok = false;
        detail = "symmetry violated";
      } else if (aa != 0.0) {
        ok = false;
        detail = "identity violated";
      } else if (ac > ab + bc + 1e-9 * std::max(1.0, ab + bc)) {
        ok = false;
        detail = "triangle inequality violated";
      }
    }
    record("metric_axioms/" + sampling::variant_name(desc), ok, detail);
  }

  // hierarchy chain and solver sandwich on a few random instances
  {
    bool ok = true;
    std::string detail;
    std::vector<MetricSpaceDescriptor> spaces = {real_space(), lambda_q_space(2.0),
                                                 discrete_space({"a", "b"})};
    int stream = 0;
    for (const auto& desc : spaces) {
      for (double p : {1.0, 2.0, kInf}) {
        Rng rng(derive_seed(seed, 500 + stream++));
        ZNetwork X = sampling::random_network(desc, 3, rng);
        ZNetwork Y = sampling::random_network(desc, 4, rng);
        SolveConfig cfg;
        cfg.p = p;
        cfg.restarts = 3;
        cfg.rng_seed = seed;
        SolveReport rep = solve_gw(X, Y, cfg);
        BoundReport bounds = bound_report(X, Y, p);
        if (!bounds.ordering_violations.empty()) {
          ok = false;
          detail = "bound chain ordering violated";
        } else if (best_lower_bound(bounds) > rep.value + 1e-9) {
          ok = false;
          detail = "lower bound exceeds solver upper bound";
        }
      }
    }
    record("bound_hierarchy_chain", ok, detail);
  }

  // blow-up invariance certified by the collapse coupling
  {
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 5 && ok; ++trial) {
      Rng rng(derive_seed(seed, 900 + trial));
      ZNetwork net = sampling::random_network(euclidean_space(2, 2.0), 3, rng);
      std::vector<int> mult = {1 + rng.uniform_int(3), 1 + rng.uniform_int(3),
                               1 + rng.uniform_int(3)};
      ZNetwork blown = blow_up(net, mult);
      Coupling collapse = collapse_coupling(net, mult);
      if (distortion(net, blown, collapse, 2.0) > 1e-12) {
        ok = false;
        detail = "collapse coupling distortion nonzero";
      }
      if (std::abs(network_size(net, 2.0, net.at(0, 0)) -
                   network_size(blown, 2.0, net.at(0, 0))) > 1e-12) {
        ok = false;
        detail = "size not preserved";
      }
    }
    record("blow_up_invariance", ok, detail);
  }

  // path endpoints and the geodesic distortion identity
  {
    bool ok = true;
    std::string detail;
    Rng rng(derive_seed(seed, 1200));
    ZNetwork X = sampling::random_network(real_space(), 3, rng);
    ZNetwork Y = sampling::random_network(real_space(), 3, rng);
    MetricPoint fill = scalar_point(0.0);

    ZNetwork at0 = mixture_path(X, Y, fill, 0.0);
    Mat restr(X.size(), at0.size());
    for (int i = 0; i < X.size(); ++i) restr(i, i) = X.weights[i];
    Coupling witness = make_coupling(std::move(restr), X.weights, at0.weights);
    if (distortion(X, at0, witness, 2.0) > 1e-12) {
      ok = false;
      detail = "mixture endpoint not certified";
    }

    SolveConfig cfg;
    cfg.rng_seed = seed;
    SolveReport rep = solve_gw(X, Y, cfg);
    GeodesicCheck check = verify_geodesic(X, Y, rep.coupling, 2.0, {0.0, 0.25, 0.5, 1.0});
    if (check.max_deviation > 1e-9) {
      ok = false;
      detail = "geodesic distortion identity violated";
    }
    record("paths_and_geodesics", ok, detail);
  }

  // landmark sandwich on Dirac-exact pairs
  {
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 5 && ok; ++trial) {
      Rng rng(derive_seed(seed, 1500 + trial));
      MetricSpaceDescriptor desc = lambda_q_space(2.0);
      ZNetwork X = sampling::random_network(desc, 2, rng, /*dirac=*/true);
      ZNetwork Y = sampling::random_network(desc, 2, rng, /*dirac=*/true);
      double gw_z = gw_exact_dirac(X, Y, 2.0).value;
      std::vector<MetricPoint> pool = kernel_values(X);
      for (const auto& v : kernel_values(Y)) pool.push_back(v);
      LandmarkSet Q = landmark_fps(desc, pool, 2, seed);
      SolveConfig cfg;
      cfg.rng_seed = seed;
      SandwichReport rep = sandwich(X, Y, Q, 2.0, kInf, cfg);
      if (gw_z > rep.upper + 1e-9 || gw_z < rep.lower - 1e-9) {
        ok = false;
        detail = "sandwich inequality violated";
      }
    }
    record("landmark_sandwich", ok, detail);
  }

  return results;
}

inline bool print_selftest(const std::vector<SelftestResult>& results, std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    out << (r.pass ? "PASS " : "FAIL ") << r.name;
    if (!r.pass && !r.detail.empty()) out << ": " << r.detail;
    out << "\n";
    all = all && r.pass;
  }
  out << (all ? "selftest: all suites passed" : "selftest: FAILURES") << "\n";
  return all;
}

}  // namespace zgw
