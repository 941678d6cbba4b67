#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace zgw {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Error taxonomy; the CLI maps these onto its exit-code scheme.
struct ZgwError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : ZgwError {
  using ZgwError::ZgwError;
};
struct ConformanceError : ZgwError {
  using ZgwError::ZgwError;
};
struct DescriptorMismatch : ZgwError {
  using ZgwError::ZgwError;
};
struct SizeCapError : ZgwError {
  using ZgwError::ZgwError;
};
struct NonGeodesicSpace : ZgwError {
  using ZgwError::ZgwError;
};

// Dense row-major matrix of doubles.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c, double fill = 0.0) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

// Deterministic splitmix64-based generator. std::uniform_real_distribution is
// implementation-defined, so all sampling goes through this to keep reports
// bit-identical across platforms.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform in {0, ..., n-1}
  int uniform_int(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }

  double exponential() { return -std::log(1.0 - uniform()); }
};

// Derives an independent stream, e.g. one per solver restart.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  Rng r(seed ^ (0xd1342543de82ef95ULL * (stream + 1)));
  return r.next();
}

inline bool is_infinite(double p) { return std::isinf(p); }

// v^p with fast paths for the common exponents.
inline double pow_p(double v, double p) {
  if (p == 1.0) return v;
  if (p == 2.0) return v * v;
  return std::pow(v, p);
}

// Weighted L^p norm accumulator over a discrete measure. For p = inf the
// value is the max over atoms of positive mass.
struct LpAccum {
  double p;
  double sum = 0.0;
  double mx = 0.0;

  explicit LpAccum(double p_) : p(p_) {}

  void add(double w, double v) {
    if (is_infinite(p)) {
      if (w > 0.0 && v > mx) mx = v;
    } else {
      sum += w * pow_p(v, p);
    }
  }

  double value() const {
    if (is_infinite(p)) return mx;
    if (p == 1.0) return sum;
    if (p == 2.0) return std::sqrt(sum);
    return std::pow(sum, 1.0 / p);
  }
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ZgwError(msg);
}

// Network-size cap; ZGW_SIZE_CAP overrides the default.
inline int size_cap() {
  if (const char* env = std::getenv("ZGW_SIZE_CAP")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 256;
}

inline bool is_probability_vector(const std::vector<double>& w, double tol = 1e-12) {
  double s = 0.0;
  for (double x : w) {
    if (x < 0.0) return false;
    s += x;
  }
  return std::abs(s - 1.0) <= tol;
}

}  // namespace zgw
