#include "qlambert/lambert_wq.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "qlambert/deformed_exp.hpp"
#include "qlambert/errors.hpp"

namespace qlambert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Bracket expansion: doubling an offset or halving the distance to a wall.
constexpr int kMaxExpansions = 4096;
// Bisection runs until the bracket is this wide relative to max(1, |w|).
constexpr double kBisectionWidth = 1e-3;

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

// d/dw [w e_q(w)] = e_q(w)^q (1 + (2-q) w).
double map_derivative(double q, double w) {
  if (is_classical(q)) return std::exp(w) * (1.0 + w);
  const double e = exp_q(q, w);
  if (e == 0.0) return 0.0;
  const double base = 1.0 + (1.0 - q) * w;
  return e / base * (1.0 + (2.0 - q) * w);
}

std::string describe(double q, double z, Branch branch) {
  std::ostringstream out;
  out << "W_q(z) with q = " << format_double(q) << ", z = " << format_double(z) << " ("
      << to_string(branch) << " branch)";
  return out.str();
}

struct Bracket {
  double a;  // a < b
  double b;
  double ga;
  double gb;
};

class Solver {
public:
  Solver(double q, double z, Branch branch, SolverOptions opts)
      : q_(q), z_(z), branch_(branch), opts_(opts), scale_(std::max(1.0, std::abs(z))) {}

  double g(double w) const { return lambert_tsallis_map(q_, w) - z_; }

  [[noreturn]] void fail(const std::string& why, double w) const {
    const double r = std::isfinite(w) ? std::abs(g(w)) : kInf;
    throw ConvergenceError(describe(q_, z_, branch_) + ": " + why, w, r, iterations_);
  }

  // Moves `far` away from `anchor` until g(far) has sign `want`. With a finite
  // wall the distance to the wall is halved, otherwise the offset doubles.
  double expand(double anchor, double wall, int direction, int want) const {
    double offset = 1.0;
    double far = std::isfinite(wall) ? anchor + 0.5 * (wall - anchor) : anchor + direction * offset;
    for (int i = 0; i < kMaxExpansions; ++i) {
      const double gf = g(far);
      if ((want > 0 && gf >= 0.0) || (want < 0 && gf <= 0.0)) return far;
      if (std::isfinite(wall)) {
        const double next = wall - 0.5 * (wall - far);
        if (next == far) break;
        far = next;
      } else {
        offset *= 2.0;
        far = anchor + direction * offset;
        if (!std::isfinite(far)) break;
      }
    }
    fail("could not bracket the root", far);
  }

  Bracket bracket(const std::optional<BranchPoint>& bp) const {
    const QExpDomain dom = qexp_domain(q_);
    const double upper_wall = dom.kind == QExpDomain::Kind::HalfLineUpper ? dom.bound : kInf;
    const double lower_wall = dom.kind == QExpDomain::Kind::HalfLineLower ? dom.bound : -kInf;

    double a = 0.0;
    double b = 0.0;
    if (branch_ == Branch::Upper) {
      if (bp) {
        a = bp->w_b;
        b = expand(a, upper_wall, +1, +1);
      } else if (z_ > 0.0) {
        a = 0.0;
        b = expand(a, upper_wall, +1, +1);
      } else {
        b = 0.0;
        a = expand(b, lower_wall, -1, -1);
      }
    } else {
      // f decreases on the lower branch: g(w_b) < 0 and g > 0 toward the wall.
      b = bp->w_b;
      a = expand(b, lower_wall, -1, +1);
    }
    return {a, b, g(a), g(b)};
  }

  SolveResult solve(const std::optional<BranchPoint>& bp) {
    Bracket br = bracket(bp);
    if (br.ga == 0.0) return finish(br.a);
    if (br.gb == 0.0) return finish(br.b);

    const int sign_a = br.ga < 0.0 ? -1 : 1;
    auto absorb = [&](double w, double gw) {
      if ((gw < 0.0 ? -1 : 1) == sign_a) {
        br.a = w;
        br.ga = gw;
      } else {
        br.b = w;
        br.gb = gw;
      }
    };

    while (br.b - br.a > kBisectionWidth * std::max({1.0, std::abs(br.a), std::abs(br.b)}) &&
           iterations_ < opts_.max_iter) {
      const double mid = 0.5 * (br.a + br.b);
      const double gm = g(mid);
      ++iterations_;
      if (gm == 0.0) return finish(mid);
      absorb(mid, gm);
    }

    // Safeguarded Newton: a step leaving the bracket, or one that fails to
    // halve the step before last, is replaced by bisection.
    double w = 0.5 * (br.a + br.b);
    double gw = g(w);
    ++iterations_;
    double step = br.b - br.a;
    double step_before = step;
    while (gw != 0.0 && iterations_ < opts_.max_iter) {
      absorb(w, gw);
      const double dg = map_derivative(q_, w);
      double next = std::numeric_limits<double>::quiet_NaN();
      if (dg != 0.0 && std::isfinite(dg)) next = w - gw / dg;
      step_before = step;
      if (!(next > br.a && next < br.b) || std::abs(2.0 * gw) > std::abs(step_before * dg)) {
        next = 0.5 * (br.a + br.b);
      }
      step = next - w;
      if (next == w) break;
      w = next;
      gw = g(w);
      ++iterations_;
      if (std::abs(step) <= 2.0 * kEps * std::abs(w) || collapsed(br)) break;
    }
    if (std::abs(gw) <= opts_.tol * scale_) return finish(w);

    // Ill-conditioned root (f' huge near a wall): finish by bisection and
    // take the best double in the bracket.
    while (!collapsed(br) && iterations_ < opts_.max_iter) {
      const double mid = 0.5 * (br.a + br.b);
      const double gm = g(mid);
      ++iterations_;
      if (gm == 0.0) return finish(mid);
      absorb(mid, gm);
    }
    double best = w;
    for (double cand : {br.a, br.b}) {
      if (std::abs(g(cand)) < std::abs(g(best))) best = cand;
    }
    return finish(best, collapsed(br));
  }

  static bool collapsed(const Bracket& br) {
    return br.b - br.a <= 4.0 * kEps * std::max(std::abs(br.a), std::abs(br.b));
  }

  // `at_resolution`: the sign change is pinned between neighbouring doubles,
  // so no representable w does better.
  SolveResult finish(double w, bool at_resolution = false) const {
    const double residual = std::abs(g(w));
    if (!(residual <= opts_.tol * scale_) && !at_resolution) {
      std::ostringstream why;
      why << "residual " << residual << " above tolerance after " << iterations_ << " iterations";
      throw ConvergenceError(describe(q_, z_, branch_) + ": " + why.str(), w, residual,
                             iterations_);
    }
    return {w, branch_, residual, iterations_};
  }

private:
  double q_;
  double z_;
  Branch branch_;
  SolverOptions opts_;
  double scale_;
  int iterations_ = 0;
};

}  // namespace

std::string_view to_string(Branch b) {
  return b == Branch::Upper ? "upper" : "lower";
}

Branch parse_branch(std::string_view text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "upper") return Branch::Upper;
  if (lower == "lower") return Branch::Lower;
  throw ParseError("branch must be 'upper' or 'lower', got '" + std::string(text) + "'");
}

bool Interval::contains(double z) const noexcept {
  if (empty || std::isnan(z)) return false;
  const bool above = lo_closed ? z >= lo : z > lo;
  const bool below = hi_closed ? z <= hi : z < hi;
  return above && below;
}

std::string Interval::to_string() const {
  if (empty) return "(empty)";
  return std::string(lo_closed ? "[" : "(") + format_double(lo) + ", " + format_double(hi) +
         (hi_closed ? "]" : ")");
}

double lambert_tsallis_map(double q, double w) {
  return w * exp_q(q, w);
}

std::optional<BranchPoint> branch_point(double q) {
  if (!(q < 2.0)) return std::nullopt;
  const double w_b = 1.0 / (q - 2.0);
  return BranchPoint{lambert_tsallis_map(q, w_b), w_b};
}

Interval branch_domain(double q, Branch branch) {
  if (const auto bp = branch_point(q)) {
    if (branch == Branch::Upper) return {bp->z_b, kInf, true, false};
    return {bp->z_b, 0.0, true, false};
  }
  if (branch == Branch::Lower) return {0.0, 0.0, false, false, true};
  // q >= 2: w e_q(w) increases over the whole positivity domain. Its limit
  // as w -> -inf is -1 for q = 2 and -inf beyond.
  if (q == 2.0) return {-1.0, kInf, false, false};
  return {-kInf, kInf, false, false};
}

SolveResult wq(double q, double z, Branch branch, SolverOptions opts) {
  if (!(opts.tol > 0.0) || opts.max_iter < 1) {
    throw ConfigError("solver options need tol > 0 and max_iter >= 1");
  }
  if (!std::isfinite(q) || !std::isfinite(z)) {
    throw DomainError(describe(q, z, branch) + ": q and z must be finite");
  }
  const auto bp = branch_point(q);
  if (branch == Branch::Lower && !bp) {
    throw NoSuchBranch(describe(q, z, branch) +
                       ": no lower branch, a finite branch point exists only for q < 2");
  }
  const Interval dom = branch_domain(q, branch);
  if (!dom.contains(z)) {
    throw DomainError(describe(q, z, branch) + ": z must lie in " + dom.to_string());
  }
  if (z == 0.0 && branch == Branch::Upper) return {0.0, branch, 0.0, 0};
  if (bp && z == bp->z_b) {
    return {bp->w_b, branch, std::abs(lambert_tsallis_map(q, bp->w_b) - z), 0};
  }
  return Solver(q, z, branch, opts).solve(bp);
}

double dwq_dz_at(double q, double w) {
  if (is_classical(q)) {
    if (w == -1.0) throw DerivativeSingular("dW_q/dz is infinite at the branch point w = -1");
    return std::exp(-w) / (1.0 + w);
  }
  const double denom = (q - 2.0) * w - 1.0;
  if (denom == 0.0) {
    throw DerivativeSingular("dW_q/dz is infinite at the branch point w = " + format_double(w));
  }
  const double numer = std::exp(q / (q - 1.0) * std::log1p((1.0 - q) * w));
  return -numer / denom;
}

double dwq_dz(double q, double z, Branch branch, SolverOptions opts) {
  const SolveResult r = wq(q, z, branch, opts);
  if (const auto bp = branch_point(q); bp && z == bp->z_b) {
    throw DerivativeSingular(describe(q, z, branch) +
                             ": vertical tangent at the branch point z_b = " + format_double(z));
  }
  return dwq_dz_at(q, r.w);
}

std::optional<double> wq_closed_form(double q, double z, Branch branch) {
  if (q == 2.0) {
    if (branch != Branch::Upper || !(z > -1.0)) return std::nullopt;
    return z / (1.0 + z);
  }
  if (q == 0.0) {
    if (!(z >= -0.25)) return std::nullopt;
    const double root = std::sqrt(1.0 + 4.0 * z);
    if (branch == Branch::Upper) return 2.0 * z / (1.0 + root);
    if (!(z < 0.0)) return std::nullopt;
    return (-1.0 - root) / 2.0;
  }
  return std::nullopt;
}

}  // namespace qlambert
