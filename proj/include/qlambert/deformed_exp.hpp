#pragma once

// Tsallis q-exponential e_q(z), q-logarithm ln_q(z) and d ln_q/dz.

namespace qlambert {

/// |q - 1| at or below this value is evaluated with the classical exp/log.
inline constexpr double kQCollapseTol = 1e-12;

inline bool is_classical(double q) noexcept {
  return (q > 1.0 ? q - 1.0 : 1.0 - q) <= kQCollapseTol;
}

/// Where e_q is finite and positive.
struct QExpDomain {
  enum class Kind { AllReals, HalfLineLower, HalfLineUpper };
  Kind kind = Kind::AllReals;
  /// 1/(q-1). For HalfLineLower the set is (bound, inf) (e_q = 0 at the
  /// bound itself); for HalfLineUpper it is (-inf, bound).
  double bound = 0.0;

  bool contains(double z) const noexcept;
};

QExpDomain qexp_domain(double q);

/// e_q(z). Returns exactly 0 in the cutoff region 1 + (1-q)z < 0 and at the
/// boundary for q < 1; returns +infinity at the boundary for q > 1.
double exp_q(double q, double z);

/// ln_q(z) = (z^(1-q) - 1)/(1-q). Throws DomainError for z <= 0.
double ln_q(double q, double z);

/// d ln_q(z)/dz = z^(-q). Throws DomainError for z <= 0.
double dlnq_dz(double q, double z);

}  // namespace qlambert
