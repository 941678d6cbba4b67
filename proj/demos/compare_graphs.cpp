// Builds two small edge-attributed graphs, flattens them two ways (fused
// product space and cone space) and prints distances plus the lower-bound
// hierarchy for each representation.

#include <cstdio>

#include "zgw/zgw.hpp"

using namespace zgw;

static AttributedGraph triangle(double edge_scale) {
  const int n = 3;
  Mat phi(n, n);
  std::map<std::pair<int, int>, MetricPoint> ef;
  auto link = [&](int i, int j, double w, double feat) {
    phi(i, j) = w;
    phi(j, i) = w;
    ef.insert({{i, j}, scalar_point(feat)});
    ef.insert({{j, i}, scalar_point(feat)});
  };
  link(0, 1, 1.0, edge_scale);
  link(1, 2, 1.0, 2.0 * edge_scale);
  link(0, 2, 0.5, edge_scale);
  std::vector<MetricPoint> features = {vector_point({0.0, 0.0}), vector_point({1.0, 0.0}),
                                       vector_point({0.0, 1.0})};
  return make_attributed_graph(euclidean_space(2, 2.0), real_space(), features, phi, ef,
                               {1.0 / 3, 1.0 / 3, 1.0 / 3});
}

int main() {
  AttributedGraph g1 = triangle(1.0);
  AttributedGraph g2 = triangle(1.4);

  FusedParams params{0.4, 0.3, 2.0};
  ZNetwork f1 = from_attributed_graph_fused(g1, params, scalar_point(0.0));
  ZNetwork f2 = from_attributed_graph_fused(g2, params, scalar_point(0.0));

  SolveConfig cfg;
  cfg.p = 2.0;
  SolveReport fused = solve_gw(f1, f2, cfg);
  BoundReport fb = bound_report(f1, f2, 2.0);
  std::printf("fused:  value=%.6f  tlb=%.6f flb=%.6f szlb=%.6f slb=%.6f\n", fused.value, fb.tlb,
              fb.flb, fb.szlb, fb.slb);

  ZNetwork c1 = from_edge_attributed_cone(g1);
  ZNetwork c2 = from_edge_attributed_cone(g2);
  SolveReport cone = solve_gw(c1, c2, cfg);
  BoundReport cb = bound_report(c1, c2, 2.0);
  std::printf("cone:   value=%.6f  tlb=%.6f flb=%.6f szlb=%.6f slb=%.6f\n", cone.value, cb.tlb,
              cb.flb, cb.szlb, cb.slb);
  return 0;
}
