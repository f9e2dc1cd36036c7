#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace holosym {

// Deterministic random source. Uniform and normal variates are derived from
// the raw mt19937_64 stream directly so sequences do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal();

  Eigen::VectorXd normal_vector(int n);

  // Uniform in the Euclidean ball of the given radius.
  Eigen::VectorXd in_ball(int n, double radius);

  // Seed for an independent sub-stream, e.g. one per test case.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace holosym
