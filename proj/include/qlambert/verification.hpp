#pragma once

// Numerical oracles and property checks for the solver: defining-equation
// residuals, finite-difference derivative checks, the W_q(1) identity,
// branch-point geometry and a bounded integer-polynomial scan.

#include <string>
#include <vector>

#include "qlambert/lambert_wq.hpp"

namespace qlambert {

/// |w e_q(w) - z| for w = wq(q, z, branch).
double residual_defining_eq(double q, double z, Branch branch, SolverOptions opts = {});

/// Relative gap between dwq_dz and the central difference with step h.
double check_derivative_fd(double q, double z, Branch branch, double h, SolverOptions opts = {});

struct FdComparison {
  double rel_error;
  /// Relative error the central difference itself carries from rounding the
  /// two W values to double: eps (|W(z+h)| + |W(z-h)|) / |W(z+h) - W(z-h)|.
  double rounding_floor;
};

FdComparison compare_derivative_fd(double q, double z, Branch branch, double h,
                                   SolverOptions opts = {});

/// |x^(q-1) - (1-q)x - 1| at x = W_q(1) on the upper branch.
double unit_identity_residual(double q, SolverOptions opts = {});

struct BranchPointReport {
  double q;
  double delta;
  double z_b;
  double w_b;
  double residual;             ///< |w_b e_q(w_b) - z_b|
  double z_b_alternate;        ///< e_q(1/(q-2))/(q-2), evaluated independently
  bool residual_ok;
  bool minimum_ok;             ///< f(w_b +- delta) > z_b
  std::vector<double> slopes;  ///< |dW/dz| at z_b + delta, delta/10, delta/100
  bool vertical_tangent_ok;    ///< slopes strictly increasing
  bool passed;
};

/// Throws NoSuchBranch for q >= 2.
BranchPointReport branch_point_check(double q, double delta, SolverOptions opts = {});

struct ScanReport {
  double target;
  int degree_max;
  int coeff_max;
  /// Coefficients from the highest degree down to the constant term.
  std::vector<long long> best_poly;
  double best_abs_value;
  bool hit;
};

inline constexpr int kScanMaxDegree = 4;
inline constexpr int kScanMaxCoeff = 100;

/// Minimizes |p(x)| over every nonzero integer polynomial with degree <=
/// degree_max, |coefficients| <= coeff_max and positive leading coefficient.
/// Ties go to the lexicographically smallest (degree, coefficients) key, so
/// the report does not depend on `threads` (0 = hardware concurrency).
/// Throws ConfigError outside 0 <= degree_max <= 4, 1 <= coeff_max <= 100,
/// eps > 0, finite x.
ScanReport algebraicity_scan(double x, int degree_max, int coeff_max, double eps,
                             unsigned threads = 0);

/// Evaluates p (highest degree first) at x by Horner's rule.
double horner(const std::vector<long long>& poly, double x);

// ---------------------------------------------------------------------------
// Suites driven by `verify` and the acceptance tests.

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed;
  double measured;
  double threshold;
  /// Not decidable at double precision; never counted as a failure.
  bool skipped = false;
};

struct SuiteReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  std::vector<CheckResult> failures() const;
  int skipped() const;
  void append(const SuiteReport& other);
};

struct ScanSettings {
  int degree_max = 3;
  int coeff_max = 30;
  double eps = 1e-8;
};

/// q values covered by the residual, derivative and geometry suites:
/// {0, 0.5, 1, 1.5, sqrt(2), 2, 2.5, 3}.
const std::vector<double>& reference_q_grid();
/// q values for the W_q(1) identity: {1.5, sqrt(2), sqrt(3), 2.5}.
const std::vector<double>& identity_q_grid();

/// `count` points of a branch domain. `inset` > 0 keeps the points that far
/// (relative) from finite endpoints: log-spaced offsets from a finite lower
/// end, symmetric log spacing on the whole line, linear on bounded intervals.
std::vector<double> sample_domain(const Interval& domain, int count, double inset);

inline constexpr int kSamplesPerBranch = 50;

SuiteReport run_residual_suite(SolverOptions opts = {});
SuiteReport run_derivative_suite(SolverOptions opts = {});
SuiteReport run_identity_suite(SolverOptions opts = {});
SuiteReport run_branch_suite(SolverOptions opts = {});
SuiteReport run_scan_suite(const ScanSettings& settings = {});

}  // namespace qlambert
