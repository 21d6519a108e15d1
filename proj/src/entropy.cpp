#include "procunc/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace procunc {

namespace {
constexpr double kLog2 = 0.6931471805599453;  // ln 2
double log2_clamped(double x) { return std::log(x) / kLog2; }
}  // namespace

ProbVector ProbVector::make(std::vector<double> entries, double declared_total) {
  double sum = 0.0;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < -1e-10) {
      throw ValidationError("ProbVector: entry " + std::to_string(i) + " is " +
                            std::to_string(entries[i]));
    }
    if (entries[i] < 0.0) entries[i] = 0.0;
    sum += entries[i];
  }
  if (std::abs(sum - declared_total) > tol::prob) {
    throw ValidationError("ProbVector: mass " + std::to_string(sum) +
                          " differs from declared total " + std::to_string(declared_total));
  }
  return ProbVector{std::move(entries), declared_total};
}

ProbVector direct_sum(const ProbVector& p, const ProbVector& q) {
  std::vector<double> v = p.entries;
  v.insert(v.end(), q.entries.begin(), q.entries.end());
  return ProbVector{std::move(v), p.declared_total + q.declared_total};
}

ProbVector direct_product(const ProbVector& p, const ProbVector& q) {
  std::vector<double> v;
  v.reserve(p.entries.size() * q.entries.size());
  for (double a : p.entries)
    for (double b : q.entries) v.push_back(a * b);
  return ProbVector{std::move(v), p.declared_total * q.declared_total};
}

double shannon_entropy(const std::vector<double>& x) {
  double h = 0.0;
  for (double v : x) {
    if (v > 0.0) h -= v * log2_clamped(v);
  }
  return h;
}

double renyi_entropy(const ProbVector& p, double alpha) {
  if (std::isnan(alpha) || alpha < 0.0) {
    throw ValidationError("renyi_entropy: order must be >= 0");
  }
  if (std::isinf(alpha)) {
    double top = *std::max_element(p.entries.begin(), p.entries.end());
    return -log2_clamped(top);
  }
  if (alpha == 0.0) {
    Index support = 0;
    for (double v : p.entries)
      if (v > 0.0) ++support;
    return log2_clamped(static_cast<double>(support));
  }
  if (std::abs(alpha - 1.0) <= 1e-12) return shannon_entropy(p.entries);
  double power_sum = 0.0;
  for (double v : p.entries) {
    if (v > 0.0) power_sum += std::pow(v, alpha);
  }
  return log2_clamped(power_sum) / (1.0 - alpha);
}

bool harmonic_pair(double alpha, double beta, double eta) {
  auto recip = [](double x) { return std::isinf(x) ? 0.0 : 1.0 / x; };
  if (std::isnan(alpha) || std::isnan(beta) || alpha <= 0.0 || beta <= 0.0) return false;
  return std::abs(recip(alpha) + recip(beta) - 2.0) <= eta;
}

std::vector<double> padded_distribution(const ProbVector& p, Index d_A) {
  std::vector<double> v;
  v.reserve(p.entries.size() + 1);
  const double scale = 1.0 / static_cast<double>(d_A);
  for (double x : p.entries) v.push_back(x * scale);
  v.push_back(static_cast<double>(d_A - 1) * scale);
  return v;
}

MuRelationReport mu_relation(const Tester& t1, const Tester& t2,
                             const QuantumChannel& channel, double alpha, double beta) {
  if (!harmonic_pair(alpha, beta)) {
    throw ValidationError("mu_relation: orders violate 1/α + 1/β = 2");
  }
  if (t1.d_A != t2.d_A || t1.d_B != t2.d_B) {
    throw DimensionError("mu_relation: testers act on different spaces");
  }

  ProbVector p = probabilities(t1, channel);
  ProbVector q = probabilities(t2, channel);

  MuRelationReport rep;
  rep.padded_p = padded_distribution(p, t1.d_A);
  rep.padded_q = padded_distribution(q, t2.d_A);
  rep.lhs = renyi_entropy(ProbVector{rep.padded_p, 1.0}, alpha) +
            renyi_entropy(ProbVector{rep.padded_q, 1.0}, beta);
  OverlapTable table = overlap_table(extend(t1), extend(t2));
  rep.overlap = table.max_overlap;
  rep.rhs = -2.0 * log2_clamped(rep.overlap);
  rep.slack = rep.lhs - rep.rhs;
  return rep;
}

double SdpResult::hmin() const {
  if (hmin_infinite || value <= 0.0) return std::numeric_limits<double>::infinity();
  return -log2_clamped(value);
}

namespace {

SdpResult from_solution(const sdp::HminSolution& sol, bool primal) {
  SdpResult r;
  r.value = primal ? sol.primal_value : sol.dual_value;
  r.optimizer = primal ? sol.J : sol.X;
  r.duality_gap = sol.duality_gap;
  r.feasibility_residual = primal
      ? std::max(sol.primal_tp_residual, sol.primal_psd_residual)
      : sol.dual_psd_residual;
  r.hmin_infinite = sol.dual_value <= 0.0 && sol.primal_value <= 0.0 &&
                    max_abs(sol.X) == 0.0;
  r.status = (sol.status == sdp::Status::Solved && sol.certified())
                 ? SdpStatus::Solved
                 : SdpStatus::NumericalFailure;
  return r;
}

}  // namespace

SdpResult hmin_exp_dual(const Matrix& W, Index d_A, Index d_B) {
  return from_solution(sdp::solve_hmin(W, d_A, d_B), false);
}

SdpResult hmin_exp_primal(const Matrix& W, Index d_A, Index d_B) {
  return from_solution(sdp::solve_hmin(W, d_A, d_B), true);
}

ScalingCheckReport hmin_normalized_identity_check(const Matrix& G, Index d_A, Index d_B) {
  ScalingCheckReport rep;
  require_hermitian(G, "hmin_normalized_identity_check");
  double trace = G.trace().real();
  if (trace <= tol::psd) {
    rep.degenerate = true;
    return rep;
  }
  rep.unnormalized = hmin_exp_dual(G, d_A, d_B).value;
  rep.rescaled = trace * hmin_exp_dual(G / trace, d_A, d_B).value;
  rep.deviation = std::abs(rep.unnormalized - rep.rescaled);
  rep.ok = rep.deviation <= tol::sdp_gap;
  return rep;
}

}  // namespace procunc
