#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "zgw/common.hpp"
#include "zgw/network.hpp"
#include "zgw/ot.hpp"

namespace zgw {

using json = nlohmann::json;

namespace detail {

inline std::string format_double(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline void dump_rec(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + json(it.key()).dump() + ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ", ";
        first = false;
        dump_rec(v, out, indent, depth + 1);
      }
      out += "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

// Deterministic report serialization: floating-point numbers printed with 17
// significant digits (exact double round trips), object keys in sorted order
// (nlohmann objects are ordered maps), non-finite values as strings.
inline std::string dump_report(const json& j, int indent = 2) {
  std::string out;
  detail::dump_rec(j, out, indent, 0);
  out += "\n";
  return out;
}

// --- descriptors ---

inline json descriptor_to_json(const MetricSpaceDescriptor& d) {
  json j;
  switch (d.kind) {
    case SpaceKind::Real:
      j["kind"] = "real";
      break;
    case SpaceKind::LambdaInf:
      j["kind"] = "lambda_inf";
      break;
    case SpaceKind::LambdaQ:
      j["kind"] = "lambda_q";
      j["q"] = d.q;
      break;
    case SpaceKind::EuclideanLr:
      j["kind"] = "euclidean";
      j["n"] = d.dim;
      if (is_infinite(d.r)) j["r"] = "inf";
      else j["r"] = d.r;
      break;
    case SpaceKind::WeightedProduct: {
      j["kind"] = "product";
      j["q"] = d.q;
      json factors = json::array();
      for (size_t k = 0; k < d.factors.size(); ++k) {
        json f;
        f["space"] = descriptor_to_json(d.factors[k]);
        f["weight"] = d.factor_weights[k];
        factors.push_back(std::move(f));
      }
      j["factors"] = std::move(factors);
      break;
    }
    case SpaceKind::Cone:
      j["kind"] = "cone";
      j["base"] = descriptor_to_json(d.factors[0]);
      break;
    case SpaceKind::Orthogonal:
      j["kind"] = "orthogonal";
      j["d"] = d.dim;
      break;
    case SpaceKind::Empirical1D:
      j["kind"] = "empirical";
      j["p"] = d.wasserstein_order;
      break;
    case SpaceKind::SlackInterleaving:
      j["kind"] = "slack_interleaving";
      j["lambda"] = d.slack;
      j["grid"] = d.grid;
      break;
    case SpaceKind::DampedSup:
      j["kind"] = "damped_sup";
      j["grid"] = d.grid;
      break;
    case SpaceKind::Discrete:
      j["kind"] = "discrete";
      j["labels"] = d.alphabet;
      break;
  }
  return j;
}

inline double parse_extended_real(const json& j, const std::string& what) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "Inf" || s == "infinity") return kInf;
    throw ParseError(what + ": expected a number or \"inf\"");
  }
  if (!j.is_number()) throw ParseError(what + ": expected a number or \"inf\"");
  return j.get<double>();
}

inline MetricSpaceDescriptor descriptor_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("descriptor: missing \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "real") return real_space();
    if (kind == "lambda_inf") return lambda_inf_space();
    if (kind == "lambda_q") return lambda_q_space(j.at("q").get<double>());
    if (kind == "euclidean")
      return euclidean_space(j.at("n").get<int>(), parse_extended_real(j.at("r"), "euclidean r"));
    if (kind == "product") {
      std::vector<MetricSpaceDescriptor> factors;
      std::vector<double> weights;
      for (const auto& f : j.at("factors")) {
        factors.push_back(descriptor_from_json(f.at("space")));
        weights.push_back(f.at("weight").get<double>());
      }
      return product_space(std::move(factors), std::move(weights), j.at("q").get<double>());
    }
    if (kind == "cone") return cone_space(descriptor_from_json(j.at("base")));
    if (kind == "orthogonal") return orthogonal_space(j.at("d").get<int>());
    if (kind == "empirical") return empirical_space(j.at("p").get<double>());
    if (kind == "slack_interleaving")
      return slack_space(j.at("lambda").get<double>(), j.at("grid").get<std::vector<double>>());
    if (kind == "damped_sup") return damped_sup_space(j.at("grid").get<std::vector<double>>());
    if (kind == "discrete")
      return discrete_space(j.at("labels").get<std::vector<std::string>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("descriptor: ") + e.what());
  } catch (const ZgwError&) {
    throw;
  }
  throw ParseError("descriptor: unknown kind \"" + kind + "\"");
}

// --- points (descriptor-directed both ways) ---

inline json point_to_json(const MetricSpaceDescriptor& d, const MetricPoint& p) {
  switch (d.kind) {
    case SpaceKind::Real:
    case SpaceKind::LambdaInf:
    case SpaceKind::LambdaQ:
      return p.scalar;
    case SpaceKind::EuclideanLr:
    case SpaceKind::SlackInterleaving:
    case SpaceKind::DampedSup:
      return p.values;
    case SpaceKind::Orthogonal:
      return p.values;  // row-major d*d
    case SpaceKind::WeightedProduct: {
      json arr = json::array();
      for (size_t k = 0; k < d.factors.size(); ++k)
        arr.push_back(point_to_json(d.factors[k], p.parts[k]));
      return arr;
    }
    case SpaceKind::Cone: {
      json j;
      j["base"] = point_to_json(d.factors[0], *p.base);
      j["radius"] = p.radius;
      return j;
    }
    case SpaceKind::Empirical1D: {
      json j;
      j["support"] = p.values;
      j["weights"] = p.weights;
      return j;
    }
    case SpaceKind::Discrete:
      return p.label;
  }
  throw ZgwError("point_to_json: unknown kind");
}

inline MetricPoint point_from_json(const MetricSpaceDescriptor& d, const json& j) {
  try {
    switch (d.kind) {
      case SpaceKind::Real:
      case SpaceKind::LambdaInf:
      case SpaceKind::LambdaQ:
        if (!j.is_number()) throw ParseError("point: expected a number");
        return scalar_point(j.get<double>());
      case SpaceKind::EuclideanLr:
        return vector_point(j.get<std::vector<double>>());
      case SpaceKind::SlackInterleaving:
      case SpaceKind::DampedSup:
        return sampled_point(j.get<std::vector<double>>());
      case SpaceKind::Orthogonal:
        return matrix_point(d.dim, j.get<std::vector<double>>());
      case SpaceKind::WeightedProduct: {
        if (!j.is_array() || j.size() != d.factors.size())
          throw ParseError("point: tuple arity mismatch");
        std::vector<MetricPoint> parts;
        for (size_t k = 0; k < d.factors.size(); ++k)
          parts.push_back(point_from_json(d.factors[k], j[k]));
        return tuple_point(std::move(parts));
      }
      case SpaceKind::Cone:
        return cone_point(point_from_json(d.factors[0], j.at("base")),
                          j.at("radius").get<double>());
      case SpaceKind::Empirical1D:
        return empirical_point(j.at("support").get<std::vector<double>>(),
                               j.at("weights").get<std::vector<double>>());
      case SpaceKind::Discrete:
        if (!j.is_string()) throw ParseError("point: expected a label string");
        return label_point(j.get<std::string>());
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("point: ") + e.what());
  }
  throw ParseError("point: unknown descriptor kind");
}

// --- networks ---

inline json network_to_json(const ZNetwork& net) {
  json j;
  j["space"] = descriptor_to_json(net.space);
  j["labels"] = net.labels;
  j["weights"] = net.weights;
  json kernel = json::array();
  for (int i = 0; i < net.size(); ++i) {
    json row = json::array();
    for (int k = 0; k < net.size(); ++k) row.push_back(point_to_json(net.space, net.at(i, k)));
    kernel.push_back(std::move(row));
  }
  j["kernel"] = std::move(kernel);
  return j;
}

inline ZNetwork network_from_json(const json& j) {
  try {
    MetricSpaceDescriptor space = descriptor_from_json(j.at("space"));
    auto labels = j.at("labels").get<std::vector<std::string>>();
    auto weights = j.at("weights").get<std::vector<double>>();
    const auto& kj = j.at("kernel");
    if (!kj.is_array() || kj.size() != weights.size())
      throw ParseError("network: kernel must have one row per point");
    std::vector<MetricPoint> kernel;
    kernel.reserve(weights.size() * weights.size());
    for (const auto& row : kj) {
      if (!row.is_array() || row.size() != weights.size())
        throw ParseError("network: kernel rows must have one entry per point");
      for (const auto& cell : row) kernel.push_back(point_from_json(space, cell));
    }
    return make_network(std::move(space), std::move(labels), std::move(weights),
                        std::move(kernel));
  } catch (const json::exception& e) {
    throw ParseError(std::string("network: ") + e.what());
  }
}

// --- attributed graphs ---

inline json graph_to_json(const AttributedGraph& g) {
  json j;
  j["node_space"] = descriptor_to_json(g.node_space);
  j["edge_space"] = descriptor_to_json(g.edge_space);
  json feats = json::array();
  for (const auto& f : g.features) feats.push_back(point_to_json(g.node_space, f));
  j["features"] = std::move(feats);
  json phi = json::array();
  for (int i = 0; i < g.size(); ++i) {
    json row = json::array();
    for (int k = 0; k < g.size(); ++k) row.push_back(g.phi(i, k));
    phi.push_back(std::move(row));
  }
  j["phi"] = std::move(phi);
  json ef = json::array();
  for (const auto& [key, val] : g.edge_features) {
    json e;
    e["from"] = key.first;
    e["to"] = key.second;
    e["value"] = point_to_json(g.edge_space, val);
    ef.push_back(std::move(e));
  }
  j["edge_features"] = std::move(ef);
  j["weights"] = g.weights;
  return j;
}

inline AttributedGraph graph_from_json(const json& j) {
  try {
    MetricSpaceDescriptor node_space = descriptor_from_json(j.at("node_space"));
    MetricSpaceDescriptor edge_space = descriptor_from_json(j.at("edge_space"));
    auto weights = j.at("weights").get<std::vector<double>>();
    const int n = static_cast<int>(weights.size());
    std::vector<MetricPoint> features;
    for (const auto& f : j.at("features")) features.push_back(point_from_json(node_space, f));
    Mat phi(n, n);
    const auto& pj = j.at("phi");
    if (!pj.is_array() || static_cast<int>(pj.size()) != n)
      throw ParseError("graph: phi must be n x n");
    for (int i = 0; i < n; ++i) {
      if (!pj[i].is_array() || static_cast<int>(pj[i].size()) != n)
        throw ParseError("graph: phi must be n x n");
      for (int k = 0; k < n; ++k) phi(i, k) = pj[i][k].get<double>();
    }
    std::map<std::pair<int, int>, MetricPoint> edge_features;
    for (const auto& e : j.at("edge_features")) {
      int from = e.at("from").get<int>();
      int to = e.at("to").get<int>();
      edge_features.insert({{from, to}, point_from_json(edge_space, e.at("value"))});
    }
    return make_attributed_graph(std::move(node_space), std::move(edge_space),
                                 std::move(features), std::move(phi), std::move(edge_features),
                                 std::move(weights));
  } catch (const json::exception& e) {
    throw ParseError(std::string("graph: ") + e.what());
  }
}

// --- couplings ---

inline json coupling_to_json(const Coupling& c) {
  json j;
  json rows = json::array();
  for (int i = 0; i < c.pi.rows; ++i) {
    json row = json::array();
    for (int k = 0; k < c.pi.cols; ++k) row.push_back(c.pi(i, k));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  j["row_marginal"] = c.mu;
  j["col_marginal"] = c.nu;
  return j;
}

inline Coupling coupling_from_json(const json& j) {
  try {
    auto mu = j.at("row_marginal").get<std::vector<double>>();
    auto nu = j.at("col_marginal").get<std::vector<double>>();
    Mat pi(static_cast<int>(mu.size()), static_cast<int>(nu.size()));
    const auto& mj = j.at("matrix");
    for (int i = 0; i < pi.rows; ++i)
      for (int k = 0; k < pi.cols; ++k) pi(i, k) = mj.at(i).at(k).get<double>();
    return make_coupling(std::move(pi), std::move(mu), std::move(nu));
  } catch (const json::exception& e) {
    throw ParseError(std::string("coupling: ") + e.what());
  }
}

}  // namespace zgw
