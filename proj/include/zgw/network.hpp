#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zgw/common.hpp"
#include "zgw/metric_space.hpp"
#include "zgw/ot.hpp"

namespace zgw {

// Finite Z-valued measure network (X, omega_X, mu_X). The kernel is stored
// densely, row-major, and need not be symmetric. Immutable after
// construction.
struct ZNetwork {
  MetricSpaceDescriptor space;
  std::vector<std::string> labels;
  std::vector<double> weights;
  std::vector<MetricPoint> kernel;  // n*n, row-major

  int size() const { return static_cast<int>(weights.size()); }
  const MetricPoint& at(int i, int j) const {
    return kernel[static_cast<size_t>(i) * weights.size() + j];
  }
};

inline ZNetwork make_network(MetricSpaceDescriptor space, std::vector<std::string> labels,
                             std::vector<double> weights, std::vector<MetricPoint> kernel) {
  validate_descriptor(space);
  const size_t n = weights.size();
  require(n >= 1, "make_network: empty network");
  if (static_cast<int>(n) > size_cap())
    throw SizeCapError("network size exceeds cap (override with ZGW_SIZE_CAP)");
  require(labels.size() == n, "make_network: label count mismatch");
  require(kernel.size() == n * n, "make_network: kernel must be n x n");
  require(is_probability_vector(weights), "make_network: weights must form a probability vector");
  for (const auto& p : kernel) validate_point(space, p);
  return ZNetwork{std::move(space), std::move(labels), std::move(weights), std::move(kernel)};
}

inline std::vector<std::string> default_labels(int n, const std::string& prefix = "x") {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// After dropping zero-weight points, does a single point carry all the mass?
inline bool has_dirac_weights(const ZNetwork& net) {
  int positive = 0;
  for (double w : net.weights)
    if (w > 0.0) ++positive;
  return positive == 1;
}

// Graph with node features in (Psi, d_Psi), nonnegative edge kernel phi whose
// support is the edge set, and edge features in (Omega, d_Omega) defined
// exactly on the edges.
struct AttributedGraph {
  MetricSpaceDescriptor node_space;  // Psi
  MetricSpaceDescriptor edge_space;  // Omega
  std::vector<MetricPoint> features;
  Mat phi;
  std::map<std::pair<int, int>, MetricPoint> edge_features;
  std::vector<double> weights;

  int size() const { return static_cast<int>(weights.size()); }
};

inline AttributedGraph make_attributed_graph(MetricSpaceDescriptor node_space,
                                             MetricSpaceDescriptor edge_space,
                                             std::vector<MetricPoint> features, Mat phi,
                                             std::map<std::pair<int, int>, MetricPoint> edge_features,
                                             std::vector<double> weights) {
  validate_descriptor(node_space);
  validate_descriptor(edge_space);
  const int n = static_cast<int>(weights.size());
  require(n >= 1, "make_attributed_graph: empty graph");
  require(static_cast<int>(features.size()) == n, "make_attributed_graph: feature count mismatch");
  require(phi.rows == n && phi.cols == n, "make_attributed_graph: phi must be n x n");
  require(is_probability_vector(weights), "make_attributed_graph: bad node measure");
  for (const auto& f : features) validate_point(node_space, f);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      require(phi(i, j) >= 0.0, "make_attributed_graph: phi must be nonnegative");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      bool edge = phi(i, j) > 0.0;
      bool feat = edge_features.count({i, j}) > 0;
      require(edge == feat,
              "make_attributed_graph: edge features must be defined exactly where phi > 0");
    }
  }
  for (const auto& [key, val] : edge_features) validate_point(edge_space, val);
  return AttributedGraph{std::move(node_space), std::move(edge_space), std::move(features),
                         std::move(phi), std::move(edge_features), std::move(weights)};
}

struct FusedParams {
  double alpha = 0.0;
  double beta = 0.0;
  double q = 1.0;
};

inline void validate_fused_params(const FusedParams& p) {
  require(p.alpha >= 0.0 && p.alpha <= 1.0, "FusedParams: alpha must lie in [0,1]");
  require(p.beta >= 0.0 && p.beta <= 1.0, "FusedParams: beta must lie in [0,1]");
  require(p.alpha + p.beta <= 1.0, "FusedParams: alpha + beta must be <= 1");
  require(p.q >= 1.0 && std::isfinite(p.q), "FusedParams: q must lie in [1, inf)");
}

// Flattens an attributed graph into a network over the weighted product
// space (Psi, 1-alpha-beta) x (Omega, alpha) x (R, beta) with mixing
// exponent q. Kernel entry (x,x') is the tuple
// (psi(x), omega(x,x') or fill when there is no edge, phi(x,x')).
inline ZNetwork from_attributed_graph_fused(const AttributedGraph& g, const FusedParams& params,
                                            const MetricPoint& fill) {
  validate_fused_params(params);
  validate_point(g.edge_space, fill);
  MetricSpaceDescriptor space =
      product_space({g.node_space, g.edge_space, real_space()},
                    {1.0 - params.alpha - params.beta, params.alpha, params.beta}, params.q);
  const int n = g.size();
  std::vector<MetricPoint> kernel;
  kernel.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto it = g.edge_features.find({i, j});
      const MetricPoint& om = (it != g.edge_features.end()) ? it->second : fill;
      kernel.push_back(tuple_point({g.features[i], om, scalar_point(g.phi(i, j))}));
    }
  }
  return make_network(std::move(space), default_labels(n), g.weights, std::move(kernel));
}

// Cone representation of an edge-attributed graph: kernel entry is the cone
// point [omega(x,x'), phi(x,x')] on edges and the apex off edges, so the
// choice of apex base never influences distances.
inline ZNetwork from_edge_attributed_cone(const AttributedGraph& g,
                                          std::optional<MetricPoint> default_base = {}) {
  const int n = g.size();
  std::optional<MetricPoint> p0 = default_base;
  if (!g.edge_features.empty()) p0 = g.edge_features.begin()->second;
  require(p0.has_value(),
          "from_edge_attributed_cone: empty edge set requires a declared base point");
  validate_point(g.edge_space, *p0);

  MetricSpaceDescriptor space = cone_space(g.edge_space);
  std::vector<MetricPoint> kernel;
  kernel.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto it = g.edge_features.find({i, j});
      if (it != g.edge_features.end()) kernel.push_back(cone_point(it->second, g.phi(i, j)));
      else kernel.push_back(cone_point(*p0, 0.0));
    }
  }
  return make_network(std::move(space), default_labels(n), g.weights, std::move(kernel));
}

// Splits point i into multiplicities[i] copies of weight mu_i/m_i and pulls
// the kernel back along the collapse map. The result is weakly isomorphic to
// the input; collapse_coupling below is the witness.
inline ZNetwork blow_up(const ZNetwork& net, const std::vector<int>& multiplicities) {
  const int n = net.size();
  require(static_cast<int>(multiplicities.size()) == n, "blow_up: multiplicity count mismatch");
  int total = 0;
  for (int m : multiplicities) {
    require(m >= 1, "blow_up: multiplicities must be positive");
    total += m;
  }
  std::vector<int> origin;
  origin.reserve(total);
  std::vector<double> weights;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < multiplicities[i]; ++a) {
      origin.push_back(i);
      weights.push_back(net.weights[i] / multiplicities[i]);
      labels.push_back(net.labels[i] + "#" + std::to_string(a));
    }
  }
  std::vector<MetricPoint> kernel;
  kernel.reserve(static_cast<size_t>(total) * total);
  for (int u = 0; u < total; ++u)
    for (int v = 0; v < total; ++v) kernel.push_back(net.at(origin[u], origin[v]));
  return make_network(net.space, std::move(labels), std::move(weights), std::move(kernel));
}

// Coupling between a network and its blow-up whose distortion vanishes
// identically.
inline Coupling collapse_coupling(const ZNetwork& net, const std::vector<int>& multiplicities) {
  const int n = net.size();
  require(static_cast<int>(multiplicities.size()) == n, "collapse_coupling: size mismatch");
  int total = 0;
  for (int m : multiplicities) total += m;
  Mat pi(n, total);
  std::vector<double> nu;
  nu.reserve(total);
  int col = 0;
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < multiplicities[i]; ++a) {
      pi(i, col) = net.weights[i] / multiplicities[i];
      nu.push_back(net.weights[i] / multiplicities[i]);
      ++col;
    }
  }
  return make_coupling(std::move(pi), net.weights, std::move(nu));
}

// size_{p,z0}(X): L^p(mu x mu) norm of d_Z(omega(.,.), z0).
inline double network_size(const ZNetwork& net, double p, const MetricPoint& z0) {
  validate_point(net.space, z0);
  const int n = net.size();
  LpAccum acc(p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      acc.add(net.weights[i] * net.weights[j], distance(net.space, net.at(i, j), z0));
  return acc.value();
}

// Outgoing eccentricity vector: ecc(i) = || d_Z(omega(i,.), z0) ||_{L^p(mu)}.
inline std::vector<double> eccentricity_out(const ZNetwork& net, double p, const MetricPoint& z0) {
  validate_point(net.space, z0);
  const int n = net.size();
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    LpAccum acc(p);
    for (int j = 0; j < n; ++j) acc.add(net.weights[j], distance(net.space, net.at(i, j), z0));
    out[i] = acc.value();
  }
  return out;
}

// Incoming eccentricity vector: uses omega(., i).
inline std::vector<double> eccentricity_in(const ZNetwork& net, double p, const MetricPoint& z0) {
  validate_point(net.space, z0);
  const int n = net.size();
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    LpAccum acc(p);
    for (int j = 0; j < n; ++j) acc.add(net.weights[j], distance(net.space, net.at(j, i), z0));
    out[i] = acc.value();
  }
  return out;
}

// All kernel entries of a network, row-major; the landmark pool.
inline std::vector<MetricPoint> kernel_values(const ZNetwork& net) { return net.kernel; }

}  // namespace zgw
