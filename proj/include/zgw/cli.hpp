#pragma once

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zgw/approx.hpp"
#include "zgw/bounds.hpp"
#include "zgw/gw.hpp"
#include "zgw/json_io.hpp"
#include "zgw/paths.hpp"
#include "zgw/selftest.hpp"

namespace zgw::cli {

inline constexpr const char* kVersion = "zgw 0.1.0";

namespace detail {

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

// Accepts either a bare network object or a report with a "network" field,
// so ingest output pipes straight back into dist/bounds/.... Documents that
// fail validation are parse errors; only the size cap keeps its own code.
inline ZNetwork load_network(const std::string& path) {
  json j = load_json_file(path);
  try {
    if (j.is_object() && j.contains("network")) return network_from_json(j["network"]);
    return network_from_json(j);
  } catch (const ParseError&) {
    throw;
  } catch (const SizeCapError&) {
    throw;
  } catch (const ZgwError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline double parse_p(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "infinity") return kInf;
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    if (!(v >= 1.0)) throw ParseError("p must lie in [1, inf]");
    return v;
  } catch (const std::invalid_argument&) {
    throw ParseError("cannot parse number: " + s);
  } catch (const std::out_of_range&) {
    throw ParseError("cannot parse number: " + s);
  }
}

inline json extended_real_to_json(double v) {
  if (is_infinite(v)) return "inf";
  return v;
}

inline std::vector<double> parse_times(const std::string& csv) {
  std::vector<double> times;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    double t;
    try {
      t = std::stod(item);
    } catch (const std::exception&) {
      throw ParseError("cannot parse time value: " + item);
    }
    if (t < 0.0 || t > 1.0) throw ParseError("times must lie in [0,1]");
    times.push_back(t);
  }
  if (times.empty()) throw ParseError("no sample times given");
  std::sort(times.begin(), times.end());
  return times;
}

struct CommonFlags {
  std::string p = "2";
  uint64_t seed = 0;
  int restarts = 4;
  double tol = 1e-9;
  bool timing = false;
};

inline json make_manifest(const std::string& command, const std::vector<std::string>& inputs,
                          const CommonFlags& flags) {
  json m;
  m["command"] = command;
  m["inputs"] = inputs;
  m["p"] = extended_real_to_json(parse_p(flags.p));
  m["seed"] = flags.seed;
  m["restarts"] = flags.restarts;
  m["tol"] = flags.tol;
  m["version"] = kVersion;
  return m;
}

inline SolveConfig make_config(const CommonFlags& flags) {
  SolveConfig cfg;
  cfg.p = parse_p(flags.p);
  cfg.rng_seed = flags.seed;
  cfg.restarts = flags.restarts;
  cfg.tolerance = flags.tol;
  return cfg;
}

inline void add_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--p", flags.p, "exponent p (real >= 1 or \"inf\")");
  sub->add_option("--seed", flags.seed, "rng seed");
  sub->add_option("--restarts", flags.restarts, "solver restarts");
  sub->add_option("--tol", flags.tol, "solver tolerance");
  sub->add_flag("--timing", flags.timing, "embed wall time in the manifest (non-deterministic)");
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// Runs one CLI invocation against the given streams. Returns the process
// exit code: 0 ok, 1 failure, 2 parse error, 3 descriptor mismatch, 4 size
// cap, 5 non-geodesic target space.
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Z-valued measure networks and Gromov-Wasserstein distances"};
  app.require_subcommand(1);

  detail::CommonFlags flags;
  std::string file_a, file_b, z0_literal, fill_literal, csv_path, kind = "mixture";
  std::string times_csv = "0,0.5,1";
  std::string mode = "fused";
  double alpha = 0.0, beta = 0.0, fused_q = 1.0;
  std::string r_str = "inf";
  int landmarks = 2;
  int resolution = 1000;
  bool want_coupling = false, want_verify = false;

  CLI::App* dist = app.add_subcommand("dist", "GW distance between two networks");
  dist->add_option("a", file_a, "network JSON")->required();
  dist->add_option("b", file_b, "network JSON")->required();
  detail::add_common(dist, flags);
  dist->add_flag("--coupling", want_coupling, "emit the certified coupling");
  dist->add_flag("--verify", want_verify, "cross-check against the lower-bound hierarchy");

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "lower-bound hierarchy");
  bounds_cmd->add_option("a", file_a)->required();
  bounds_cmd->add_option("b", file_b)->required();
  detail::add_common(bounds_cmd, flags);
  bounds_cmd->add_option("--z0", z0_literal, "basepoint as a JSON literal");

  CLI::App* approx_cmd = app.add_subcommand("approx", "landmark sandwich approximation");
  approx_cmd->add_option("a", file_a)->required();
  approx_cmd->add_option("b", file_b)->required();
  detail::add_common(approx_cmd, flags);
  approx_cmd->add_option("--landmarks", landmarks, "number of FPS landmarks");
  approx_cmd->add_option("--r", r_str, "embedding exponent r (real >= 1 or \"inf\")");

  CLI::App* interp_cmd = app.add_subcommand("interp", "paths between networks");
  interp_cmd->add_option("a", file_a)->required();
  interp_cmd->add_option("b", file_b, "second endpoint (unused for --kind contraction)");
  detail::add_common(interp_cmd, flags);
  interp_cmd->add_option("--kind", kind, "mixture | contraction | geodesic");
  interp_cmd->add_option("--times", times_csv, "comma-separated sample times in [0,1]");
  interp_cmd->add_option("--fill", fill_literal, "fill/contraction point as a JSON literal");
  interp_cmd->add_option("--csv", csv_path, "write (s,t,distortion,bound) rows to this file");

  CLI::App* ingest_cmd = app.add_subcommand("ingest", "attributed graph -> network");
  ingest_cmd->add_option("graph", file_a, "attributed graph JSON")->required();
  detail::add_common(ingest_cmd, flags);
  ingest_cmd->add_option("--mode", mode, "fused | cone");
  ingest_cmd->add_option("--alpha", alpha, "fused alpha");
  ingest_cmd->add_option("--beta", beta, "fused beta");
  ingest_cmd->add_option("--q", fused_q, "fused mixing exponent");
  ingest_cmd->add_option("--fill", fill_literal,
                         "off-edge fill point (fused, required) / apex base (cone, optional)");

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force GW oracle");
  oracle_cmd->add_option("a", file_a)->required();
  oracle_cmd->add_option("b", file_b)->required();
  detail::add_common(oracle_cmd, flags);
  oracle_cmd->add_option("--resolution", resolution, "grid steps per free dimension");

  CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the invariant suites");
  selftest_cmd->add_option("--seed", flags.seed, "rng seed");

  std::vector<const char*> argv;
  argv.push_back("zgw");
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  detail::Stopwatch watch;
  try {
    if (selftest_cmd->parsed()) {
      return print_selftest(run_selftest(flags.seed), out) ? 0 : 1;
    }

    if (dist->parsed()) {
      ZNetwork X = detail::load_network(file_a);
      ZNetwork Y = detail::load_network(file_b);
      SolveConfig cfg = detail::make_config(flags);
      SolveReport rep = solve_gw(X, Y, cfg);
      json j;
      j["manifest"] = detail::make_manifest("dist", {file_a, file_b}, flags);
      j["value"] = rep.value;
      json fl;
      fl["exact"] = rep.exact;
      fl["converged"] = rep.converged;
      fl["heuristic"] = rep.heuristic;
      j["flags"] = fl;
      json trace = json::array();
      for (const auto& t : rep.trace) {
        json tj;
        tj["restart"] = t.index;
        tj["init"] = t.init;
        tj["value"] = t.value;
        tj["iterations"] = t.iterations;
        tj["converged"] = t.converged;
        trace.push_back(std::move(tj));
      }
      j["trace"] = std::move(trace);
      if (want_coupling) j["coupling"] = coupling_to_json(rep.coupling);
      if (want_verify) {
        BoundReport br = bound_report(X, Y, cfg.p);
        json bj;
        bj["tlb"] = br.tlb;
        bj["flb"] = br.flb;
        bj["szlb"] = br.szlb;
        bj["slb"] = br.slb;
        bj["max"] = best_lower_bound(br);
        bj["consistent"] = best_lower_bound(br) <= rep.value + 1e-9;
        j["bounds"] = std::move(bj);
      }
      if (flags.timing) j["manifest"]["wall_time_ms"] = watch.ms();
      out << dump_report(j);
      return 0;
    }

    if (bounds_cmd->parsed()) {
      ZNetwork X = detail::load_network(file_a);
      ZNetwork Y = detail::load_network(file_b);
      double p = detail::parse_p(flags.p);
      std::optional<MetricPoint> z0;
      if (!z0_literal.empty()) {
        json zj;
        try {
          zj = json::parse(z0_literal);
        } catch (const json::exception& e) {
          throw ParseError(std::string("--z0: ") + e.what());
        }
        z0 = point_from_json(X.space, zj);
        validate_point(X.space, *z0);
      }
      BoundReport rep = bound_report(X, Y, p, z0);
      json j;
      j["manifest"] = detail::make_manifest("bounds", {file_a, file_b}, flags);
      j["tlb"] = rep.tlb;
      j["flb"] = rep.flb;
      j["szlb"] = rep.szlb;
      j["slb"] = rep.slb;
      j["ordering_violations"] = rep.ordering_violations;
      j["z0"] = point_to_json(X.space, rep.z0);
      if (flags.timing) j["manifest"]["wall_time_ms"] = watch.ms();
      out << dump_report(j);
      return 0;
    }

    if (approx_cmd->parsed()) {
      ZNetwork X = detail::load_network(file_a);
      ZNetwork Y = detail::load_network(file_b);
      check_same_space(X, Y);
      SolveConfig cfg = detail::make_config(flags);
      double r = detail::parse_p(r_str);
      std::vector<MetricPoint> pool = kernel_values(X);
      for (const auto& v : kernel_values(Y)) pool.push_back(v);
      int k = std::min<int>(landmarks, static_cast<int>(pool.size()));
      LandmarkSet Q = landmark_fps(X.space, pool, k, flags.seed);
      SandwichReport rep = sandwich(X, Y, Q, cfg.p, r, cfg);
      json j;
      j["manifest"] = detail::make_manifest("approx", {file_a, file_b}, flags);
      j["manifest"]["landmarks"] = k;
      j["manifest"]["r"] = detail::extended_real_to_json(r);
      j["rn_value"] = rep.rn_value;
      j["rn_lower_certificate"] = rep.rn_lower_certificate;
      j["lower"] = rep.lower;
      j["upper"] = rep.upper;
      j["hausdorff_term"] = rep.hausdorff_term;
      j["n"] = rep.n;
      j["exact"] = rep.exact;
      if (flags.timing) j["manifest"]["wall_time_ms"] = watch.ms();
      out << dump_report(j);
      return 0;
    }

    if (interp_cmd->parsed()) {
      ZNetwork X = detail::load_network(file_a);
      double p = detail::parse_p(flags.p);
      std::vector<double> times = detail::parse_times(times_csv);

      std::optional<MetricPoint> fill;
      if (!fill_literal.empty()) {
        json fj;
        try {
          fj = json::parse(fill_literal);
        } catch (const json::exception& e) {
          throw ParseError(std::string("--fill: ") + e.what());
        }
        fill = point_from_json(X.space, fj);
      }

      json j;
      j["manifest"] = detail::make_manifest("interp", {file_a, file_b}, flags);
      j["manifest"]["kind"] = kind;
      j["manifest"]["times"] = times;
      json samples = json::array();
      json pairs = json::array();

      auto emit_pair = [&](double s, double t, double dis, double bound) {
        json pj;
        pj["s"] = s;
        pj["t"] = t;
        pj["distortion"] = dis;
        pj["bound"] = bound;
        pairs.push_back(std::move(pj));
      };

      if (kind == "contraction") {
        MetricPoint z = fill.value_or(X.at(0, 0));
        validate_point(X.space, z);
        PathSpec spec{PathKind::Contraction, X, {}, z, {}, times};
        for (const auto& net : sample_path(spec)) samples.push_back(network_to_json(net));
        double size_p = network_size(X, p, z);
        for (size_t a = 0; a < times.size(); ++a)
          for (size_t b = a + 1; b < times.size(); ++b) {
            double s = times[a], t = times[b];
            ZNetwork Xs = contraction_path(X, z, s);
            ZNetwork Xt = contraction_path(X, z, t);
            Coupling plan = contraction_time_coupling(X, s, t);
            double dis = distortion(Xs, Xt, plan, p);
            double bound =
                is_infinite(p) ? kInf : std::pow(3.0 * (t - s), 1.0 / p) * size_p;
            emit_pair(s, t, dis, bound);
          }
      } else if (kind == "mixture") {
        if (file_b.empty()) throw ParseError("interp --kind mixture needs two networks");
        ZNetwork Y = detail::load_network(file_b);
        check_same_space(X, Y);
        MetricPoint z = fill.value_or(X.at(0, 0));
        validate_point(X.space, z);
        PathSpec spec{PathKind::Mixture, X, Y, z, {}, times};
        for (const auto& net : sample_path(spec)) samples.push_back(network_to_json(net));
        SolveConfig cfg = detail::make_config(flags);
        SolveReport rep = solve_gw(X, Y, cfg);
        MixtureHolderTerms terms;
        if (!is_infinite(p)) terms = mixture_holder_terms(X, Y, z, rep.coupling, p);
        for (size_t a = 0; a < times.size(); ++a)
          for (size_t b = a + 1; b < times.size(); ++b) {
            double s = times[a], t = times[b];
            ZNetwork Xs = mixture_path(X, Y, z, s);
            ZNetwork Xt = mixture_path(X, Y, z, t);
            Coupling plan = mixture_time_coupling(X, Y, rep.coupling, s, t);
            double dis = distortion(Xs, Xt, plan, p);
            double bound =
                is_infinite(p)
                    ? kInf
                    : std::pow((t - s) * (terms.i_pipi + 2.0 * terms.i_xpi + 2.0 * terms.i_piy),
                               1.0 / p);
            emit_pair(s, t, dis, bound);
          }
      } else if (kind == "geodesic") {
        if (file_b.empty()) throw ParseError("interp --kind geodesic needs two networks");
        ZNetwork Y = detail::load_network(file_b);
        check_same_space(X, Y);
        SolveConfig cfg = detail::make_config(flags);
        SolveReport rep = solve_gw(X, Y, cfg);
        const bool keep_full = is_infinite(p);
        PathSpec spec{PathKind::Geodesic, X, Y, {}, rep.coupling, times, keep_full};
        for (const auto& net : sample_path(spec)) samples.push_back(network_to_json(net));
        double base = distortion(X, Y, rep.coupling, p);
        for (size_t a = 0; a < times.size(); ++a)
          for (size_t b = a + 1; b < times.size(); ++b) {
            double s = times[a], t = times[b];
            ZNetwork Xs = geodesic_interpolate(X, Y, rep.coupling, s, 1e-12, keep_full);
            ZNetwork Xt = geodesic_interpolate(X, Y, rep.coupling, t, 1e-12, keep_full);
            Coupling diag = diagonal_coupling(Xs.weights);
            double dis = distortion(Xs, Xt, diag, p);
            emit_pair(s, t, dis, (t - s) * base);
          }
      } else {
        throw ParseError("unknown --kind " + kind);
      }

      j["samples"] = std::move(samples);
      j["pairs"] = pairs;
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw ZgwError("cannot write " + csv_path);
        csv << "s,t,distortion,bound\n";
        for (const auto& pj : pairs) {
          char buf[256];
          std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", pj["s"].get<double>(),
                        pj["t"].get<double>(), pj["distortion"].get<double>(),
                        pj["bound"].get<double>());
          csv << buf;
        }
      }
      if (flags.timing) j["manifest"]["wall_time_ms"] = watch.ms();
      out << dump_report(j);
      return 0;
    }

    if (ingest_cmd->parsed()) {
      AttributedGraph g = graph_from_json(detail::load_json_file(file_a));
      std::optional<MetricPoint> fill;
      if (!fill_literal.empty()) {
        json fj;
        try {
          fj = json::parse(fill_literal);
        } catch (const json::exception& e) {
          throw ParseError(std::string("--fill: ") + e.what());
        }
        fill = point_from_json(g.edge_space, fj);
      }
      ZNetwork net = [&]() {
        if (mode == "fused") {
          if (!fill.has_value())
            throw ParseError("ingest --mode fused requires --fill (off-edge point)");
          return from_attributed_graph_fused(g, FusedParams{alpha, beta, fused_q}, *fill);
        }
        if (mode == "cone") return from_edge_attributed_cone(g, fill);
        throw ParseError("unknown --mode " + mode);
      }();
      json j;
      j["manifest"] = detail::make_manifest("ingest", {file_a}, flags);
      j["manifest"]["mode"] = mode;
      if (mode == "fused") {
        j["manifest"]["alpha"] = alpha;
        j["manifest"]["beta"] = beta;
        j["manifest"]["q"] = fused_q;
      }
      j["network"] = network_to_json(net);
      if (flags.timing) j["manifest"]["wall_time_ms"] = watch.ms();
      out << dump_report(j);
      return 0;
    }

    if (oracle_cmd->parsed()) {
      ZNetwork X = detail::load_network(file_a);
      ZNetwork Y = detail::load_network(file_b);
      SolveConfig cfg = detail::make_config(flags);
      double oracle = brute_force_gw(X, Y, cfg.p, resolution);
      SolveReport rep = solve_gw(X, Y, cfg);
      json j;
      j["manifest"] = detail::make_manifest("oracle", {file_a, file_b}, flags);
      j["manifest"]["resolution"] = resolution;
      j["value"] = oracle;
      j["solver_value"] = rep.value;
      j["gap"] = rep.value - oracle;
      if (flags.timing) j["manifest"]["wall_time_ms"] = watch.ms();
      out << dump_report(j);
      return 0;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DescriptorMismatch& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const SizeCapError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const NonGeodesicSpace& e) {
    err << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace zgw::cli
