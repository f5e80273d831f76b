#pragma once

// Real branches of the Lambert-Tsallis function: solutions w of
// w * e_q(w) = z.

#include <optional>
#include <string>
#include <string_view>

namespace qlambert {

enum class Branch { Upper, Lower };

std::string_view to_string(Branch b);
/// "upper" / "lower", case-insensitive. Throws ParseError otherwise.
Branch parse_branch(std::string_view text);

/// Point where the two real branches meet: f(w_b) = z_b with f(w) = w e_q(w).
struct BranchPoint {
  double z_b;
  double w_b;
};

/// Real interval with independently open/closed ends; may be unbounded or empty.
struct Interval {
  double lo;
  double hi;
  bool lo_closed = false;
  bool hi_closed = false;
  bool empty = false;

  bool contains(double z) const noexcept;
  /// e.g. "[-0.25, inf)" or "(empty)".
  std::string to_string() const;
};

struct SolverOptions {
  double tol = 1e-12;
  int max_iter = 200;
};

struct SolveResult {
  double w;
  Branch branch;
  double residual;  ///< |w e_q(w) - z|
  int iterations;
};

/// w * e_q(w). Zero wherever e_q hits its cutoff.
double lambert_tsallis_map(double q, double w);

/// w_b = 1/(q-2), z_b = w_b e_q(w_b). None for q >= 2: at q = 2 the point
/// escapes to infinity and for q > 2 w_b falls outside e_q's positivity domain.
std::optional<BranchPoint> branch_point(double q);

/// Set of z for which the given branch has a real value.
Interval branch_domain(double q, Branch branch);

/// Solves w e_q(w) = z on the requested branch by bracketed bisection
/// followed by safeguarded Newton.
///
/// Throws NoSuchBranch (Lower without a branch point), DomainError (z outside
/// branch_domain, message names the interval), ConvergenceError, or
/// ConfigError (tol <= 0, max_iter < 1).
SolveResult wq(double q, double z, Branch branch = Branch::Upper, SolverOptions opts = {});

/// dW_q/dz at z on the given branch. Throws DerivativeSingular at z = z_b.
double dwq_dz(double q, double z, Branch branch = Branch::Upper, SolverOptions opts = {});

/// Same formula evaluated at a known w (no solve).
double dwq_dz_at(double q, double w);

/// Closed forms: q = 2 gives z/(1+z) for z > -1 (Upper only); q = 0 gives the
/// quadratic roots (-1 +- sqrt(1+4z))/2. Nullopt elsewhere.
std::optional<double> wq_closed_form(double q, double z, Branch branch = Branch::Upper);

}  // namespace qlambert
