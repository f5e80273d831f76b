#include "qlambert/deformed_exp.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qlambert/errors.hpp"

namespace qlambert {

namespace {

void require_positive(const char* fn, double z) {
  if (!(z > 0.0)) {
    std::ostringstream msg;
    msg << fn << ": z must lie in (0, inf), got " << z;
    throw DomainError(msg.str());
  }
}

}  // namespace

bool QExpDomain::contains(double z) const noexcept {
  switch (kind) {
    case Kind::AllReals: return std::isfinite(z);
    case Kind::HalfLineLower: return z > bound;
    case Kind::HalfLineUpper: return z < bound;
  }
  return false;
}

QExpDomain qexp_domain(double q) {
  if (is_classical(q)) return {};
  const double bound = 1.0 / (q - 1.0);
  return {q < 1.0 ? QExpDomain::Kind::HalfLineLower : QExpDomain::Kind::HalfLineUpper, bound};
}

double exp_q(double q, double z) {
  if (is_classical(q)) return std::exp(z);
  const double one_minus_q = 1.0 - q;
  // base = 1 + x. When that sum rounds, log1p keeps log(base)/(1-q) accurate.
  const double x = one_minus_q * z;
  if (x < -1.0) return 0.0;
  if (x == -1.0) return q < 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
  const double base = 1.0 + x;
  if (base - 1.0 == x) return std::pow(base, 1.0 / one_minus_q);
  return std::exp(std::log1p(x) / one_minus_q);
}

double ln_q(double q, double z) {
  require_positive("ln_q", z);
  if (is_classical(q)) return std::log(z);
  const double one_minus_q = 1.0 - q;
  return std::expm1(one_minus_q * std::log(z)) / one_minus_q;
}

double dlnq_dz(double q, double z) {
  require_positive("dlnq_dz", z);
  return std::pow(z, -q);
}

}  // namespace qlambert
