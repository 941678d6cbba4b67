#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "zgw/common.hpp"
#include "zgw/metric_space.hpp"
#include "zgw/network.hpp"

namespace zgw {

// Conforming random points and networks, one catalog entry per target-space
// variant. Deterministic given the Rng state.
namespace sampling {

inline std::vector<double> random_weights(int n, Rng& rng) {
  std::vector<double> w(n);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    w[i] = 0.2 + rng.uniform();
    s += w[i];
  }
  for (int i = 0; i < n; ++i) w[i] /= s;
  double partial = 0.0;
  for (int i = 0; i + 1 < n; ++i) partial += w[i];
  w[n - 1] = 1.0 - partial;
  return w;
}

inline MetricPoint random_orthogonal(int d, Rng& rng) {
  // random matrix, two passes of modified Gram-Schmidt
  std::vector<double> m(static_cast<size_t>(d) * d);
  for (double& x : m) x = rng.uniform(-1.0, 1.0);
  for (int pass = 0; pass < 2; ++pass) {
    for (int c = 0; c < d; ++c) {
      for (int prev = 0; prev < c; ++prev) {
        double dot = 0.0;
        for (int k = 0; k < d; ++k)
          dot += m[static_cast<size_t>(k) * d + c] * m[static_cast<size_t>(k) * d + prev];
        for (int k = 0; k < d; ++k)
          m[static_cast<size_t>(k) * d + c] -= dot * m[static_cast<size_t>(k) * d + prev];
      }
      double norm = 0.0;
      for (int k = 0; k < d; ++k) {
        double v = m[static_cast<size_t>(k) * d + c];
        norm += v * v;
      }
      norm = std::sqrt(norm);
      if (norm < 1e-6) {
        // near-degenerate column; replace with a coordinate vector and redo
        for (int k = 0; k < d; ++k) m[static_cast<size_t>(k) * d + c] = (k == c) ? 1.0 : 0.0;
        c -= 1;
        continue;
      }
      for (int k = 0; k < d; ++k) m[static_cast<size_t>(k) * d + c] /= norm;
    }
  }
  return matrix_point(d, std::move(m));
}

inline MetricPoint random_point(const MetricSpaceDescriptor& d, Rng& rng) {
  switch (d.kind) {
    case SpaceKind::Real:
      return scalar_point(rng.uniform(-2.0, 2.0));
    case SpaceKind::LambdaInf:
    case SpaceKind::LambdaQ:
      return scalar_point(rng.uniform(0.0, 2.0));
    case SpaceKind::EuclideanLr: {
      std::vector<double> v(d.dim);
      for (double& x : v) x = rng.uniform(-2.0, 2.0);
      return vector_point(std::move(v));
    }
    case SpaceKind::WeightedProduct: {
      std::vector<MetricPoint> parts;
      for (const auto& f : d.factors) parts.push_back(random_point(f, rng));
      return tuple_point(std::move(parts));
    }
    case SpaceKind::Cone: {
      double r = rng.uniform() < 0.15 ? 0.0 : rng.uniform(0.0, 2.0);
      return cone_point(random_point(d.factors[0], rng), r);
    }
    case SpaceKind::Orthogonal:
      return random_orthogonal(d.dim, rng);
    case SpaceKind::Empirical1D: {
      int k = 1 + rng.uniform_int(3);
      std::vector<double> support(k), weights;
      for (double& x : support) x = rng.uniform(0.0, 3.0);
      weights = random_weights(k, rng);
      return empirical_point(std::move(support), std::move(weights));
    }
    case SpaceKind::SlackInterleaving: {
      std::vector<double> v(d.grid.size());
      for (double& x : v) x = rng.uniform(0.0, 2.0);
      return sampled_point(std::move(v));
    }
    case SpaceKind::DampedSup: {
      std::vector<double> v(d.grid.size());
      for (double& x : v) x = rng.uniform(-2.0, 2.0);
      return sampled_point(std::move(v));
    }
    case SpaceKind::Discrete:
      return label_point(d.alphabet[rng.uniform_int(static_cast<int>(d.alphabet.size()))]);
  }
  throw ZgwError("random_point: unknown kind");
}

inline ZNetwork random_network(const MetricSpaceDescriptor& d, int n, Rng& rng,
                               bool dirac = false) {
  std::vector<double> weights;
  if (dirac) {
    weights.assign(n, 0.0);
    weights[rng.uniform_int(n)] = 1.0;
  } else {
    weights = random_weights(n, rng);
  }
  std::vector<MetricPoint> kernel;
  kernel.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n * n; ++i) kernel.push_back(random_point(d, rng));
  return make_network(d, default_labels(n), std::move(weights), std::move(kernel));
}

// One representative descriptor per catalog variant.
inline std::vector<MetricSpaceDescriptor> variant_catalog() {
  return {
      real_space(),
      lambda_inf_space(),
      lambda_q_space(2.0),
      euclidean_space(2, 2.0),
      product_space({real_space(), euclidean_space(2, 2.0)}, {0.5, 1.5}, 2.0),
      cone_space(euclidean_space(2, 2.0)),
      orthogonal_space(2),
      empirical_space(1.0),
      slack_space(1.0, {0.0, 0.5, 1.0, 1.5}),
      damped_sup_space({0.5, 1.0, 2.0}),
      discrete_space({"a", "b", "c"}),
  };
}

inline std::string variant_name(const MetricSpaceDescriptor& d) {
  switch (d.kind) {
    case SpaceKind::Real: return "real";
    case SpaceKind::LambdaInf: return "lambda_inf";
    case SpaceKind::LambdaQ: return "lambda_q";
    case SpaceKind::EuclideanLr: return "euclidean";
    case SpaceKind::WeightedProduct: return "product";
    case SpaceKind::Cone: return "cone";
    case SpaceKind::Orthogonal: return "orthogonal";
    case SpaceKind::Empirical1D: return "empirical";
    case SpaceKind::SlackInterleaving: return "slack_interleaving";
    case SpaceKind::DampedSup: return "damped_sup";
    case SpaceKind::Discrete: return "discrete";
  }
  return "?";
}

}  // namespace sampling
}  // namespace zgw
