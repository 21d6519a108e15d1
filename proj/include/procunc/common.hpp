#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace procunc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Numerical tolerances used by the validation layer. Operators produced by
// floating-point channel constructions are Hermitian/PSD only up to roundoff,
// so every invariant check carries one of these slacks.
namespace tol {
inline constexpr double herm = 1e-10;        // ‖A - A†‖_max
inline constexpr double psd = 1e-9;          // eigenvalue floor; above it, clip to 0
inline constexpr double effect_sum = 1e-8;   // ‖Σ effects - target‖_max
inline constexpr double trace_one = 1e-9;    // |Tr ρ - 1|
inline constexpr double prob = 1e-8;         // probability range / normalization slack
inline constexpr double sdp_gap = 1e-6;      // certified duality gap
inline constexpr double sdp_feas = 1e-7;     // certified feasibility residual
inline constexpr double prefix = 1e-9;       // majorization prefix-sum comparisons
}  // namespace tol

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : ValidationError {
  explicit DimensionError(const std::string& what) : ValidationError(what) {}
};

struct NotPsdError : ValidationError {
  explicit NotPsdError(const std::string& what) : ValidationError(what) {}
};

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

struct EnumerationCapError : std::runtime_error {
  explicit EnumerationCapError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace procunc
