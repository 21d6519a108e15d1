#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "procunc/common.hpp"

namespace procunc {

/// Derive an independent child seed from a campaign seed and a work-item
/// index. Parallel and serial sweeps that seed each item this way produce
/// identical streams regardless of scheduling.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Seeded generator with hand-rolled Box-Muller normals. std::normal_distribution
/// is implementation-defined, so sampling is done explicitly to keep streams
/// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  Complex normal_complex() {
    double re = normal();
    double im = normal();
    return Complex(re, im);
  }

  /// Matrix of i.i.d. standard complex Gaussians, filled column-major.
  Matrix ginibre(Index rows, Index cols) {
    Matrix g(rows, cols);
    for (Index c = 0; c < cols; ++c)
      for (Index r = 0; r < rows; ++r) g(r, c) = normal_complex();
    return g;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace procunc
