#include "qlambert/verification.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "qlambert/deformed_exp.hpp"
#include "qlambert/errors.hpp"

namespace qlambert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string label(double q, Branch b) {
  return "q=" + fmt(q) + " " + std::string(to_string(b));
}

std::vector<Branch> available_branches(double q) {
  if (branch_point(q)) return {Branch::Upper, Branch::Lower};
  return {Branch::Upper};
}

// Best polynomial of one (degree, leading coefficient) slice.
struct ScanCandidate {
  std::vector<long long> poly;
  double value = kInf;
};

// Key order: degree first, then coefficients from the top. Within a slice
// all candidates share degree and leading coefficient.
bool lex_less(const std::vector<long long>& a, const std::vector<long long>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void consider(ScanCandidate& best, const std::vector<long long>& poly, double value) {
  if (value < best.value || (value == best.value && lex_less(poly, best.poly))) {
    best.poly = poly;
    best.value = value;
  }
}

// Enumerates every polynomial with the given degree (>= 1) and leading
// coefficient. The constant term is minimized in closed form: Horner's last
// step is fl(v + c), monotone in c, so |fl(v + c)| is smallest at one of the
// two integers around -v. That gives the same minimizer as trying every c.
ScanCandidate scan_slice(double x, int degree, long long lead, int coeff_max) {
  ScanCandidate best;
  std::vector<long long> poly(static_cast<std::size_t>(degree) + 1, -coeff_max);
  poly[0] = lead;
  const auto middle = static_cast<std::size_t>(degree);  // index of constant term
  while (true) {
    double v = 0.0;
    for (std::size_t i = 0; i < middle; ++i) v = v * x + static_cast<double>(poly[i]);
    v *= x;
    const double target = -v;
    for (double c : {std::floor(target), std::ceil(target)}) {
      const double clamped = std::clamp(c, static_cast<double>(-coeff_max),
                                        static_cast<double>(coeff_max));
      poly[middle] = static_cast<long long>(clamped);
      consider(best, poly, std::abs(v + clamped));
    }
    // Odometer over the middle coefficients (indices 1 .. degree-1).
    std::size_t i = middle;
    while (i > 1) {
      --i;
      if (poly[i] < coeff_max) {
        ++poly[i];
        break;
      }
      poly[i] = -coeff_max;
      if (i == 1) return best;
    }
    if (middle == 1) return best;
  }
}

}  // namespace

double residual_defining_eq(double q, double z, Branch branch, SolverOptions opts) {
  const SolveResult r = wq(q, z, branch, opts);
  return std::abs(lambert_tsallis_map(q, r.w) - z);
}

FdComparison compare_derivative_fd(double q, double z, Branch branch, double h,
                                   SolverOptions opts) {
  if (!(h > 0.0)) throw ConfigError("finite-difference step must be positive");
  const double analytic = dwq_dz(q, z, branch, opts);
  const double plus = wq(q, z + h, branch, opts).w;
  const double minus = wq(q, z - h, branch, opts).w;
  const double central = (plus - minus) / (2.0 * h);
  const double eps = std::numeric_limits<double>::epsilon();
  return {std::abs(analytic - central) / std::max(std::abs(analytic), 1e-300),
          eps * (std::abs(plus) + std::abs(minus)) / std::abs(plus - minus)};
}

double check_derivative_fd(double q, double z, Branch branch, double h, SolverOptions opts) {
  return compare_derivative_fd(q, z, branch, h, opts).rel_error;
}

double unit_identity_residual(double q, SolverOptions opts) {
  const double x = wq(q, 1.0, Branch::Upper, opts).w;
  return std::abs(std::pow(x, q - 1.0) - (1.0 - q) * x - 1.0);
}

BranchPointReport branch_point_check(double q, double delta, SolverOptions opts) {
  const auto bp = branch_point(q);
  if (!bp) {
    throw NoSuchBranch("no finite branch point for q = " + fmt(q) + " (exists only for q < 2)");
  }
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  BranchPointReport rep{};
  rep.q = q;
  rep.delta = delta;
  rep.z_b = bp->z_b;
  rep.w_b = bp->w_b;
  rep.residual = std::abs(lambert_tsallis_map(q, bp->w_b) - bp->z_b);
  rep.z_b_alternate = exp_q(q, 1.0 / (q - 2.0)) / (q - 2.0);
  rep.residual_ok =
      rep.residual <= 1e-12 && std::abs(rep.z_b_alternate - bp->z_b) <= 1e-12;
  rep.minimum_ok = lambert_tsallis_map(q, bp->w_b + delta) > bp->z_b &&
                   lambert_tsallis_map(q, bp->w_b - delta) > bp->z_b;
  rep.vertical_tangent_ok = true;
  for (double d = delta; rep.slopes.size() < 3; d /= 10.0) {
    const double slope = std::abs(dwq_dz(q, bp->z_b + d, Branch::Upper, opts));
    if (!rep.slopes.empty() && !(slope > rep.slopes.back())) rep.vertical_tangent_ok = false;
    rep.slopes.push_back(slope);
  }
  rep.passed = rep.residual_ok && rep.minimum_ok && rep.vertical_tangent_ok;
  return rep;
}

double horner(const std::vector<long long>& poly, double x) {
  double v = 0.0;
  for (long long c : poly) v = v * x + static_cast<double>(c);
  return v;
}

ScanReport algebraicity_scan(double x, int degree_max, int coeff_max, double eps,
                             unsigned threads) {
  if (degree_max < 0 || degree_max > kScanMaxDegree || coeff_max < 1 ||
      coeff_max > kScanMaxCoeff || !(eps > 0.0) || !std::isfinite(x)) {
    throw ConfigError("scan needs 0 <= degree_max <= " + std::to_string(kScanMaxDegree) +
                      ", 1 <= coeff_max <= " + std::to_string(kScanMaxCoeff) +
                      ", eps > 0 and finite x");
  }

  // Degree 0: the constant 1 is the best nonzero polynomial.
  ScanCandidate best{{1}, 1.0};

  struct Slice {
    int degree;
    long long lead;
  };
  std::vector<Slice> slices;
  for (int d = 1; d <= degree_max; ++d) {
    for (long long lead = 1; lead <= coeff_max; ++lead) slices.push_back({d, lead});
  }

  std::vector<ScanCandidate> results(slices.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < slices.size(); i = next++) {
      results[i] = scan_slice(x, slices[i].degree, slices[i].lead, coeff_max);
    }
  };
  unsigned n = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(slices.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const ScanCandidate& c : results) consider(best, c.poly, c.value);

  return {x, degree_max, coeff_max, best.poly, best.value, best.value < eps};
}

// ---------------------------------------------------------------------------

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

int SuiteReport::skipped() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [](const CheckResult& c) { return c.skipped; }));
}

std::vector<CheckResult> SuiteReport::failures() const {
  std::vector<CheckResult> out;
  std::copy_if(checks.begin(), checks.end(), std::back_inserter(out),
               [](const CheckResult& c) { return !c.passed; });
  return out;
}

void SuiteReport::append(const SuiteReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

const std::vector<double>& reference_q_grid() {
  static const std::vector<double> grid{0.0, 0.5, 1.0, 1.5, std::sqrt(2.0), 2.0, 2.5, 3.0};
  return grid;
}

const std::vector<double>& identity_q_grid() {
  static const std::vector<double> grid{1.5, std::sqrt(2.0), std::sqrt(3.0), 2.5};
  return grid;
}

std::vector<double> sample_domain(const Interval& domain, int count, double inset) {
  std::vector<double> out;
  if (domain.empty || count < 2) return out;
  const bool lo_finite = std::isfinite(domain.lo);
  const bool hi_finite = std::isfinite(domain.hi);
  auto log_offsets = [](int n, double first) {
    std::vector<double> s;
    const double e0 = std::log10(first);
    for (int i = 0; i < n; ++i) s.push_back(std::pow(10.0, e0 + (3.0 - e0) * i / (n - 1)));
    return s;
  };
  const double first = std::max(inset, 1e-3);

  if (lo_finite && !hi_finite) {
    const double scale = std::max(1.0, std::abs(domain.lo));
    for (double s : log_offsets(count, first)) out.push_back(domain.lo + s * scale);
    if (inset == 0.0 && domain.lo_closed) out.front() = domain.lo;
  } else if (!lo_finite && !hi_finite) {
    const int half = count / 2;
    const auto s = log_offsets(count - half, first);
    for (int i = half - 1; i >= 0; --i) out.push_back(-s[static_cast<std::size_t>(i)]);
    for (double v : s) out.push_back(v);
  } else {
    const double t0 = inset == 0.0 && domain.lo_closed ? 0.0 : first;
    const double t1 = 1.0 - first;
    for (int i = 0; i < count; ++i) {
      out.push_back(domain.lo + (domain.hi - domain.lo) * (t0 + (t1 - t0) * i / (count - 1)));
    }
  }
  return out;
}

SuiteReport run_residual_suite(SolverOptions opts) {
  SuiteReport rep;
  for (double q : reference_q_grid()) {
    for (Branch b : available_branches(q)) {
      for (double z : sample_domain(branch_domain(q, b), kSamplesPerBranch, 0.0)) {
        double measured = kInf;
        try {
          measured = residual_defining_eq(q, z, b, opts) / std::max(1.0, std::abs(z));
        } catch (const Error&) {
        }
        rep.checks.push_back(
            {"residual", label(q, b) + " z=" + fmt(z), measured <= 1e-10, measured, 1e-10});
      }
    }
  }
  return rep;
}

constexpr double kFdThreshold = 1e-6;

SuiteReport run_derivative_suite(SolverOptions opts) {
  SuiteReport rep;
  for (double q : reference_q_grid()) {
    for (Branch b : available_branches(q)) {
      for (double z : sample_domain(branch_domain(q, b), kSamplesPerBranch, 1e-2)) {
        FdComparison fd{kInf, 0.0};
        try {
          fd = compare_derivative_fd(q, z, b, 1e-6 * std::max(1.0, std::abs(z)), opts);
        } catch (const Error&) {
        }
        // Near the q > 2 wall W flattens so fast that the difference quotient
        // is mostly rounding noise; such points cannot test anything.
        const bool skip = fd.rounding_floor > kFdThreshold;
        rep.checks.push_back({"derivative", label(q, b) + " z=" + fmt(z),
                              skip || fd.rel_error <= kFdThreshold, fd.rel_error, kFdThreshold,
                              skip});
      }
    }
  }
  return rep;
}

SuiteReport run_identity_suite(SolverOptions opts) {
  SuiteReport rep;
  for (double q : identity_q_grid()) {
    double measured = kInf;
    try {
      measured = unit_identity_residual(q, opts);
    } catch (const Error&) {
    }
    rep.checks.push_back({"eq5", "q=" + fmt(q), measured <= 1e-10, measured, 1e-10});
  }
  return rep;
}

SuiteReport run_branch_suite(SolverOptions opts) {
  SuiteReport rep;
  auto record = [&](std::string name, bool ok, double measured, double threshold) {
    rep.checks.push_back({"branch", std::move(name), ok, measured, threshold});
  };

  for (double q : {0.0, 0.5, 1.0, 1.5}) {
    try {
      const BranchPointReport r = branch_point_check(q, 1e-4, opts);
      record("branch point q=" + fmt(q), r.passed, r.residual, 1e-12);
    } catch (const Error&) {
      record("branch point q=" + fmt(q), false, kInf, 1e-12);
    }
  }

  for (double q : reference_q_grid()) {
    const Interval up = branch_domain(q, Branch::Upper);
    // Strictly increasing upper branch over the residual grid.
    try {
      double prev = -kInf;
      int violations = 0;
      for (double z : sample_domain(up, kSamplesPerBranch, 0.0)) {
        const double w = wq(q, z, Branch::Upper, opts).w;
        if (!(w > prev)) ++violations;
        prev = w;
      }
      record("upper monotone " + label(q, Branch::Upper), violations == 0, violations, 0);
    } catch (const Error&) {
      record("upper monotone " + label(q, Branch::Upper), false, kInf, 0);
    }
    // Concavity by second central differences at interior points.
    try {
      double worst = -kInf;
      for (double z : sample_domain(up, kSamplesPerBranch, 1e-2)) {
        double h = 1e-3 * std::max(1.0, std::abs(z));
        if (std::isfinite(up.lo)) h = std::min(h, 0.5 * (z - up.lo));
        const double second = (wq(q, z + h, Branch::Upper, opts).w -
                               2.0 * wq(q, z, Branch::Upper, opts).w +
                               wq(q, z - h, Branch::Upper, opts).w) /
                              (h * h);
        worst = std::max(worst, second);
      }
      record("upper concave " + label(q, Branch::Upper), worst <= 1e-8, worst, 1e-8);
    } catch (const Error&) {
      record("upper concave " + label(q, Branch::Upper), false, kInf, 1e-8);
    }
    if (!branch_point(q)) continue;
    // Lower branch falls as z moves up from z_b toward 0.
    try {
      double prev = kInf;
      int violations = 0;
      for (double z : sample_domain(branch_domain(q, Branch::Lower), kSamplesPerBranch, 0.0)) {
        const double w = wq(q, z, Branch::Lower, opts).w;
        if (!(w < prev)) ++violations;
        prev = w;
      }
      record("lower decreasing " + label(q, Branch::Lower), violations == 0, violations, 0);
    } catch (const Error&) {
      record("lower decreasing " + label(q, Branch::Lower), false, kInf, 0);
    }
  }

  bool refused = false;
  try {
    wq(2.0, -0.5, Branch::Lower, opts);
  } catch (const NoSuchBranch&) {
    refused = true;
  } catch (const Error&) {
  }
  record("no lower branch at q=2", refused, refused ? 0 : 1, 0);

  for (double z : {0.5, 1.0, 2.0}) {
    double gap = kInf;
    try {
      const double w1 = wq(1.0, z, Branch::Upper, opts).w;
      gap = std::max(std::abs(wq(1.0 + 1e-6, z, Branch::Upper, opts).w - w1),
                     std::abs(wq(1.0 - 1e-6, z, Branch::Upper, opts).w - w1));
    } catch (const Error&) {
    }
    record("q-continuity z=" + fmt(z), gap <= 1e-4, gap, 1e-4);
  }
  return rep;
}

SuiteReport run_scan_suite(const ScanSettings& settings) {
  SuiteReport rep;
  auto expect_hit = [&](std::string name, double x, int dmax, int cmax,
                        const std::vector<long long>& poly) {
    const ScanReport r = algebraicity_scan(x, dmax, cmax, settings.eps);
    rep.checks.push_back(
        {"scan", std::move(name), r.hit && r.best_poly == poly, r.best_abs_value, settings.eps});
  };
  expect_hit("x=1/2 finds 2x-1", 0.5, 1, 2, {2, -1});
  expect_hit("x=sqrt(2) finds x^2-2", std::sqrt(2.0), 2, 2, {1, 0, -2});

  const double omega = wq(1.0, 1.0, Branch::Upper).w;
  const ScanReport r =
      algebraicity_scan(omega, settings.degree_max, settings.coeff_max, settings.eps);
  rep.checks.push_back({"scan",
                        "omega no hit (degree<=" + std::to_string(settings.degree_max) +
                            ", |c|<=" + std::to_string(settings.coeff_max) + ")",
                        !r.hit, r.best_abs_value, settings.eps});
  return rep;
}

}  // namespace qlambert
