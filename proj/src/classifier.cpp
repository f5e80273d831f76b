#include "qlambert/classifier.hpp"

#include "qlambert/errors.hpp"

namespace qlambert {

namespace {

constexpr int kMaxEnclosureDigits = 20000;

BigInt pow10(int digits) {
  BigInt p(1);
  for (int i = 0; i < digits; ++i) p *= 10;
  return p;
}

bool is_one(const ExactNumber& x) { return x.is_exactly(Rational(1)); }
bool is_zero(const ExactNumber& x) { return x.is_exactly(Rational(0)); }

// Algebraic and irrational: in this representation, exactly the surds.
bool is_algebraic_irrational(const ExactNumber& x) { return x.is_surd(); }

Classification make(ArithmeticClass verdict, Rule rule, std::vector<std::string> facts,
                    std::optional<ExactNumber> exact = std::nullopt) {
  return Classification{verdict, rule, std::move(facts), std::move(exact)};
}

Classification exact(const ExactNumber& value, std::vector<std::string> facts) {
  facts.push_back("exact value " + to_string(value) + " is " +
                  std::string(to_string(classify_number(value))));
  return make(classify_number(value), Rule::ExactValue, std::move(facts), value);
}

Classification unknown(std::vector<std::string> facts) {
  facts.emplace_back("no rule applies; arithmetic nature undecided");
  return make(ArithmeticClass::Unknown, Rule::GuardFallthrough, std::move(facts));
}

std::string show(std::string_view name, const ExactNumber& x) {
  return std::string(name) + " = " + to_string(x);
}

std::string kind_of(const ExactNumber& x) {
  if (x.is_rational()) return "rational";
  if (x.is_surd()) return "algebraic irrational (quadratic surd)";
  return "transcendental";
}

// arctan(1/x) lies between consecutive partial sums of its alternating series.
std::pair<Rational, Rational> arctan_inverse_bounds(long long x, const Rational& width) {
  const BigInt xx = BigInt(x) * x;
  BigInt power(x);  // x^(2k+1)
  Rational sum;
  for (long long k = 0;; ++k) {
    const Rational term(BigInt(1), BigInt(2 * k + 1) * power);
    const Rational next = k % 2 == 0 ? sum + term : sum - term;
    if (term <= width) return next < sum ? std::pair{next, sum} : std::pair{sum, next};
    sum = next;
    power *= xx;
  }
}

// Subtracting 1 from 1+(1-q)t: sign of 1 + (1-q) t at a rational t.
int base_sign_at(const ExactNumber& one_minus_q, const Rational& t) {
  return sign(add(ExactNumber(1), mul(one_minus_q, ExactNumber(t))));
}

// Sign of X + Y sqrt(m) with X, Y in one quadratic field and m squarefree
// outside it.
int sign_plus_root(const ExactNumber& x, const ExactNumber& y, const BigInt& m) {
  const int sx = sign(x);
  const int sy = sign(y);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  // Opposite signs: compare x^2 with m y^2.
  return sx * sign(sub(mul(x, x), mul(ExactNumber(Rational(m)), mul(y, y))));
}

// 1 + (1-q) z for q in Q(sqrt(m)), z in Q(sqrt(n)), m != n: regroup as
// X + Y sqrt(m) with X = 1 + z - a z and Y = -b z, both in Q(sqrt(n)).
int mixed_field_base_sign(const QuadSurd& q, const ExactNumber& z) {
  const ExactNumber a(q.a);
  const ExactNumber b(q.b);
  const ExactNumber x = add(ExactNumber(1), sub(z, mul(a, z)));
  const ExactNumber y = neg(mul(b, z));
  return sign_plus_root(x, y, q.d);
}

}  // namespace

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::Theorem1: return "Theorem1";
    case Rule::Theorem2: return "Theorem2";
    case Rule::Theorem3: return "Theorem3";
    case Rule::Theorem4: return "Theorem4";
    case Rule::Theorem5: return "Theorem5";
    case Rule::Theorem6: return "Theorem6";
    case Rule::ClassicalExp: return "ClassicalExp";
    case Rule::ClassicalW1: return "ClassicalW1";
    case Rule::ClosedFormQ2: return "ClosedFormQ2";
    case Rule::CutoffZero: return "CutoffZero";
    case Rule::ExactValue: return "ExactValue";
    case Rule::GuardFallthrough: return "GuardFallthrough";
  }
  return "GuardFallthrough";
}

std::pair<Rational, Rational> enclose(Constant c, int digits) {
  const Rational width(BigInt(1), pow10(digits));
  if (c == Constant::E) {
    // e - sum_{k<=n} 1/k! < 1/(n! n).
    Rational sum(1);
    BigInt factorial(1);
    for (long long n = 1;; ++n) {
      factorial *= n;
      sum = sum + Rational(BigInt(1), factorial);
      const Rational tail(BigInt(1), factorial * n);
      if (tail <= width) return {sum, sum + tail};
    }
  }
  // pi = 16 arctan(1/5) - 4 arctan(1/239).
  const Rational part = width / Rational(40);
  const auto [lo5, hi5] = arctan_inverse_bounds(5, part);
  const auto [lo239, hi239] = arctan_inverse_bounds(239, part);
  return {Rational(16) * lo5 - Rational(4) * hi239, Rational(16) * hi5 - Rational(4) * lo239};
}

std::optional<int> cutoff_base_sign(const ExactNumber& q, const ExactNumber& z) {
  if (q.is_transcendental()) return std::nullopt;
  const ExactNumber one_minus_q = sub(ExactNumber(1), q);
  if (z.is_algebraic()) {
    const QuadSurd* qs = q.quad_surd();
    const QuadSurd* zs = z.quad_surd();
    if (qs && zs && qs->d != zs->d) return mixed_field_base_sign(*qs, z);
    return sign(add(ExactNumber(1), mul(one_minus_q, z)));
  }
  if (is_zero(one_minus_q)) return 1;
  // The base is linear in the constant and cannot vanish (that would make the
  // constant algebraic), so refinement terminates.
  const Constant c = z.constant()->tag;
  for (int digits = 16; digits <= kMaxEnclosureDigits; digits *= 2) {
    const auto [lo, hi] = enclose(c, digits);
    const int s_lo = base_sign_at(one_minus_q, lo);
    const int s_hi = base_sign_at(one_minus_q, hi);
    if (s_lo == s_hi && s_lo != 0) return s_lo;
  }
  return std::nullopt;
}

Classification classify_expq(const ExactNumber& q, const ExactNumber& z) {
  std::vector<std::string> facts{show("q", q) + " (" + kind_of(q) + ")",
                                 show("z", z) + " (" + kind_of(z) + ")"};
  if (is_zero(z)) {
    facts.emplace_back("e_q(0) = 1 for every q");
    return exact(ExactNumber(1), std::move(facts));
  }
  if (is_one(q)) {
    if (z.is_algebraic()) {
      facts.emplace_back("q = 1 so e_q(z) = e^z");
      facts.emplace_back("Hermite-Lindemann: e^z is transcendental for algebraic z != 0");
      return make(ArithmeticClass::Transcendental, Rule::ClassicalExp, std::move(facts));
    }
    return unknown(std::move(facts));
  }

  const std::optional<int> base_sign = cutoff_base_sign(q, z);
  if (base_sign && *base_sign <= 0) {
    const bool q_below_one = sign(sub(q, ExactNumber(1))) < 0;
    if (*base_sign == 0 && !q_below_one) {
      throw DomainError("e_q(z) diverges: 1 + (1-q)z = 0 with q > 1 (q = " + to_string(q) +
                        ", z = " + to_string(z) + ")");
    }
    facts.emplace_back(*base_sign < 0 ? "1 + (1-q)z < 0 (exact sign)"
                                      : "1 + (1-q)z = 0 with q < 1 (exact sign)");
    facts.emplace_back("e_q(z) is cut off to 0");
    return make(ArithmeticClass::Rational, Rule::CutoffZero, std::move(facts), ExactNumber(0));
  }

  if (is_algebraic_irrational(q) && z.is_algebraic()) {
    facts.emplace_back("1 + (1-q)z > 0 (exact sign), so e_q(z) = (1 + (1-q)z)^(1/(1-q))");
    facts.emplace_back("base 1 + (1-q)z is algebraic, nonzero, and != 1 because z != 0, q != 1");
    facts.emplace_back("exponent 1/(1-q) is algebraic irrational because q is");
    facts.emplace_back("Gelfond-Schneider: algebraic^(algebraic irrational) is transcendental");
    return make(ArithmeticClass::Transcendental, Rule::Theorem2, std::move(facts));
  }

  if (q.is_rational() && z.is_transcendental() && base_sign) {
    facts.emplace_back("1 + (1-q)z > 0 (decided by rational enclosure of " + to_string(z) + ")");
    facts.emplace_back("1 + (1-q)z is transcendental: q is rational != 1");
    facts.emplace_back("a transcendental number to a nonzero rational power is transcendental");
    return make(ArithmeticClass::Transcendental, Rule::Theorem5, std::move(facts));
  }

  return unknown(std::move(facts));
}

Classification classify_wq(const ExactNumber& q, const ExactNumber& z) {
  std::vector<std::string> facts{show("q", q) + " (" + kind_of(q) + ")",
                                 show("z", z) + " (" + kind_of(z) + ")"};
  if (is_zero(z)) {
    facts.emplace_back("w e_q(w) = 0 forces w = 0 where e_q(w) > 0");
    return exact(ExactNumber(0), std::move(facts));
  }

  if (q.is_exactly(Rational(2))) {
    facts.emplace_back("q = 2: e_2(w) = 1/(1-w), so W_2(z) = z/(1+z) on z > -1");
    if (z.is_transcendental()) {
      facts.emplace_back("z/(1+z) is a rational Moebius image of a transcendental number");
      return make(ArithmeticClass::Transcendental, Rule::ClosedFormQ2, std::move(facts));
    }
    if (sign(add(z, ExactNumber(1))) <= 0) {
      throw DomainError("W_2(z) = z/(1+z) needs z > -1, got z = " + to_string(z));
    }
    const ExactNumber value = div(z, add(ExactNumber(1), z));
    facts.push_back("exact value " + to_string(value) + " is " +
                    std::string(to_string(classify_number(value))));
    return make(classify_number(value), Rule::ClosedFormQ2, std::move(facts), value);
  }

  if (is_one(q) && is_one(z)) {
    facts.emplace_back("q = 1: W_1(1) is the omega constant, which is transcendental");
    return make(ArithmeticClass::Transcendental, Rule::ClassicalW1, std::move(facts));
  }

  if (is_algebraic_irrational(q) && z.is_algebraic()) {
    if (is_one(z)) {
      facts.emplace_back("x = W_q(1) satisfies x^(q-1) = (1-q)x + 1");
      facts.emplace_back("if x were algebraic, the right side would be algebraic");
      facts.emplace_back(
          "and x^(q-1) transcendental by Gelfond-Schneider (q-1 algebraic irrational)");
      facts.emplace_back("contradiction, so W_q(1) is transcendental");
      return make(ArithmeticClass::Transcendental, Rule::Theorem1, std::move(facts));
    }
    facts.emplace_back("any real solution w satisfies e_q(w) = z/w");
    facts.emplace_back("if w were algebraic, e_q(w) would be transcendental (q irrational, w != 0)");
    facts.emplace_back("while z/w would be algebraic: contradiction");
    return make(ArithmeticClass::Transcendental, Rule::Theorem3, std::move(facts));
  }

  return unknown(std::move(facts));
}

Classification classify_lnq_derivative(const ExactNumber& q, const ExactNumber& z0) {
  if (z0.is_algebraic() && sign(z0) <= 0) {
    throw DomainError("d ln_q/dz is defined for z0 > 0, got z0 = " + to_string(z0));
  }
  std::vector<std::string> facts{show("q", q) + " (" + kind_of(q) + ")",
                                 show("z0", z0) + " (" + kind_of(z0) + ")",
                                 "d ln_q(z)/dz = z^(-q)"};
  if (is_one(z0)) {
    facts.emplace_back("1^(-q) = 1 (Gelfond-Schneider excludes base 1)");
    return exact(ExactNumber(1), std::move(facts));
  }
  if (is_algebraic_irrational(q) && z0.is_algebraic()) {
    facts.emplace_back("base z0 is algebraic, not 0 or 1; exponent -q is algebraic irrational");
    facts.emplace_back("Gelfond-Schneider: z0^(-q) is transcendental");
    return make(ArithmeticClass::Transcendental, Rule::Theorem4, std::move(facts));
  }
  if (const Rational* r = q.rational(); r && r->is_integer() && z0.is_algebraic()) {
    if (abs(r->num()) <= kMaxExactExponent) {
      const long long n = r->num().convert_to<long long>();
      facts.emplace_back("integer exponent: evaluate z0^(-q) in the field");
      return exact(power(z0, -n), std::move(facts));
    }
    facts.emplace_back("integer exponent too large for exact evaluation");
  }
  return unknown(std::move(facts));
}

Classification classify_tower(const ExactNumber& r) {
  std::vector<std::string> facts{show("r", r) + " (" + kind_of(r) + ")",
                                 "tower read as r^(r^r)"};
  const Rational* rat = r.rational();
  const bool integer = rat != nullptr && rat->is_integer();
  if (r.is_algebraic() && !integer && sign(r) < 0) {
    throw UnsupportedOperand("r^(r^r) has no real value for negative non-integer r = " +
                             to_string(r));
  }
  if (rat != nullptr && !integer) {
    facts.emplace_back("r is rational, not an integer, and positive");
    facts.emplace_back("r^r is algebraic irrational for r in Q \\ Z");
    facts.emplace_back(
        "Gelfond-Schneider with base r (not 0 or 1) and exponent r^r: r^(r^r) is transcendental");
    return make(ArithmeticClass::Transcendental, Rule::Theorem6, std::move(facts));
  }
  if (integer) facts.emplace_back("r is an integer; the tower rule needs r in Q \\ Z");
  return unknown(std::move(facts));
}

}  // namespace qlambert
