#include <cmath>
#include <random>

#include "doctest.h"
#include "qlambert/errors.hpp"
#include "qlambert/exact_numbers.hpp"

using namespace qlambert;

namespace {

Rational frac(long long n, long long d) { return Rational(BigInt(n), BigInt(d)); }

// Independent squarefree oracle: d is squarefree iff no k >= 2 has k^2 | d.
bool squarefree_oracle(long long d) {
  for (long long k = 2; k * k <= d; ++k) {
    if (d % (k * k) == 0) return false;
  }
  return true;
}

struct SurdGen {
  std::mt19937_64 rng{20240611};

  Rational rational(long long bound) {
    std::uniform_int_distribution<long long> num(-bound, bound);
    std::uniform_int_distribution<long long> den(1, bound);
    return Rational(BigInt(num(rng)), BigInt(den(rng)));
  }

  long long radicand() {
    std::uniform_int_distribution<long long> d(0, 200);
    return d(rng);
  }
};

}  // namespace

TEST_CASE("rationals are always reduced") {
  const Rational r(BigInt(2), BigInt(4));
  CHECK(r == frac(1, 2));
  CHECK(r.num() == 1);
  CHECK(r.den() == 2);
  const Rational neg(BigInt(3), BigInt(-6));
  CHECK(neg.num() == -1);
  CHECK(neg.den() == 2);
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), MalformedInput);
}

TEST_CASE("normalize examples") {
  CHECK(normalize(ExactNumber(Rational(BigInt(2), BigInt(4)))) == ExactNumber(frac(1, 2)));

  const ExactNumber root8 = normalize(QuadSurd{0, 1, BigInt(8)});
  REQUIRE(root8.is_surd());
  CHECK(root8.quad_surd()->a == Rational(0));
  CHECK(root8.quad_surd()->b == Rational(2));
  CHECK(root8.quad_surd()->d == 2);

  CHECK(normalize(QuadSurd{3, 0, BigInt(5)}) == ExactNumber(3));
  CHECK(normalize(QuadSurd{1, 3, BigInt(9)}) == ExactNumber(10));
  CHECK(normalize(QuadSurd{frac(1, 2), 5, BigInt(0)}) == ExactNumber(frac(1, 2)));
  CHECK(normalize(QuadSurd{0, 1, BigInt(72)}) == ExactNumber::surd(0, 6, 2));
  CHECK_THROWS_AS(normalize(QuadSurd{0, 1, BigInt(-2)}), MalformedInput);
}

TEST_CASE("normalize is idempotent and canonical over random surds") {
  SurdGen gen;
  for (int i = 0; i < 500; ++i) {
    const long long d = gen.radicand();
    const QuadSurd raw{gen.rational(50), gen.rational(50), BigInt(d)};
    const ExactNumber once = normalize(raw);
    CHECK(is_canonical(once));
    CHECK(normalize(once) == once);
    if (const auto* s = once.quad_surd()) {
      CHECK(squarefree_oracle(s->d.convert_to<long long>()));
      CHECK(s->d >= 2);
    }
    // Value is preserved.
    const double expected = to_real(ExactNumber(raw.a)) +
                            to_real(ExactNumber(raw.b)) * std::sqrt(static_cast<double>(d));
    CHECK(to_real(once) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("field arithmetic examples") {
  const ExactNumber s = parse_exact("3+2*sqrt(2)");
  const ExactNumber t = parse_exact("3-2*sqrt(2)");
  CHECK(mul(s, t) == ExactNumber(1));
  CHECK(add(ExactNumber(frac(1, 2)), ExactNumber(frac(1, 3))) == ExactNumber(frac(5, 6)));
  CHECK(div(ExactNumber(1), parse_exact("sqrt(2)")) == ExactNumber::surd(0, frac(1, 2), 2));
  CHECK(sub(s, s) == ExactNumber(0));
  CHECK(power(parse_exact("1+sqrt(2)"), 2) == parse_exact("3+2*sqrt(2)"));
  CHECK(power(ExactNumber(2), -3) == ExactNumber(frac(1, 8)));
}

TEST_CASE("field arithmetic errors") {
  CHECK_THROWS_AS(add(parse_exact("sqrt(2)"), parse_exact("sqrt(3)")), UnsupportedField);
  CHECK_THROWS_AS(mul(ExactNumber(Constant::Pi), ExactNumber(2)), UnsupportedOperand);
  CHECK_THROWS_AS(div(ExactNumber(1), ExactNumber(0)), DivisionByZero);
  CHECK_THROWS_AS(div(parse_exact("sqrt(5)"), parse_exact("0*sqrt(5)")), DivisionByZero);
  CHECK_THROWS_AS(sign(ExactNumber(Constant::E)), UnsupportedOperand);
}

TEST_CASE("field closure and conjugate products over random operands") {
  SurdGen gen;
  const long long fields[] = {2, 3, 5, 6, 7, 10, 13};
  for (int i = 0; i < 300; ++i) {
    const long long d = fields[i % 7];
    const ExactNumber x = ExactNumber::surd(gen.rational(20), gen.rational(20), d);
    const ExactNumber y = ExactNumber::surd(gen.rational(20), gen.rational(20), d);
    for (const ExactNumber& r : {add(x, y), sub(x, y), mul(x, y)}) CHECK(is_canonical(r));
    if (sign(y) != 0) {
      const ExactNumber quotient = div(x, y);
      CHECK(is_canonical(quotient));
      CHECK(mul(quotient, y) == x);
    }
    if (const auto* s = x.quad_surd()) {
      const ExactNumber conj = ExactNumber::surd(s->a, -s->b, d);
      CHECK(mul(x, conj).is_rational());
    }
  }
}

TEST_CASE("sign examples") {
  CHECK(sign(parse_exact("3-2*sqrt(2)")) == 1);
  CHECK(sign(ExactNumber(0)) == 0);
  CHECK(sign(parse_exact("1-sqrt(2)")) == -1);
  CHECK(sign(parse_exact("-1+sqrt(2)")) == 1);
  CHECK(sign(parse_exact("-sqrt(3)")) == -1);
  CHECK(sign(ExactNumber(frac(-1, 7))) == -1);
}

TEST_CASE("sign agrees with to_real on random surds with large components") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long long> comp(-1'000'000, 1'000'000);
  std::uniform_int_distribution<long long> den(1, 1'000'000);
  const long long fields[] = {2, 3, 5, 7, 11, 101, 9973};
  int compared = 0;
  for (int i = 0; i < 2000; ++i) {
    const ExactNumber x = ExactNumber::surd(Rational(BigInt(comp(rng)), BigInt(den(rng))),
                                            Rational(BigInt(comp(rng)), BigInt(den(rng))),
                                            fields[i % 7]);
    const double v = to_real(x);
    if (std::abs(v) > 1e-12) {
      ++compared;
      CHECK(sign(x) == (v > 0 ? 1 : -1));
    }
  }
  CHECK(compared > 1900);
}

TEST_CASE("classify_number") {
  CHECK(classify_number(ExactNumber(frac(1, 2))) == ArithmeticClass::Rational);
  CHECK(classify_number(parse_exact("sqrt(2)")) == ArithmeticClass::AlgebraicIrrational);
  CHECK(classify_number(ExactNumber(Constant::Pi)) == ArithmeticClass::Transcendental);
  CHECK(classify_number(ExactNumber(Constant::E)) == ArithmeticClass::Transcendental);

  SurdGen gen;
  for (int i = 0; i < 200; ++i) {
    const ExactNumber x = normalize(QuadSurd{gen.rational(9), gen.rational(9), BigInt(gen.radicand())});
    CHECK(classify_number(x) != ArithmeticClass::Unknown);
  }
}

TEST_CASE("to_real") {
  CHECK(to_real(parse_exact("sqrt(2)")) == 1.4142135623730951);
  CHECK(to_real(ExactNumber(frac(1, 2))) == 0.5);
  CHECK(to_real(ExactNumber(Constant::E)) == 2.718281828459045);
  // e agrees with the log oracle: ln(e) = 1.
  CHECK(std::log(to_real(ExactNumber(Constant::E))) == doctest::Approx(1.0).epsilon(1e-16));
  CHECK(to_real(ExactNumber(Constant::Pi)) == 3.141592653589793);
  // Cancellation: 3 - 2 sqrt(2) = 0.17157287525381...
  CHECK(to_real(parse_exact("3-2*sqrt(2)")) == 0.17157287525380990);
  CHECK(to_real(ExactNumber(frac(1, 3))) == 1.0 / 3.0);
}

TEST_CASE("parse grammar") {
  CHECK(parse_exact("7") == ExactNumber(7));
  CHECK(parse_exact("-3/16") == ExactNumber(frac(-3, 16)));
  CHECK(parse_exact(" 1 / 2 ") == ExactNumber(frac(1, 2)));
  CHECK(parse_exact("1 2") == ExactNumber(12));
  CHECK(parse_exact("1.25") == ExactNumber(frac(5, 4)));
  CHECK(parse_exact("SQRT(8)") == ExactNumber::surd(0, 2, 2));
  CHECK(parse_exact("-sqrt(3)") == ExactNumber::surd(0, -1, 3));
  CHECK(parse_exact("1+sqrt(2)") == ExactNumber::surd(1, 1, 2));
  CHECK(parse_exact("1/2-3/4*sqrt(5)") == ExactNumber::surd(frac(1, 2), frac(-3, 4), 5));
  CHECK(parse_exact("sqrt(2)+1") == ExactNumber::surd(1, 1, 2));
  CHECK(parse_exact("sqrt(4)") == ExactNumber(2));
  CHECK(parse_exact("E") == ExactNumber(Constant::E));
  CHECK(parse_exact("Pi") == ExactNumber(Constant::Pi));

  for (const char* bad : {"", "abc", "sqrt(2", "1+", "sqrt(-2)", "1+2+3", "sqrt(2)+sqrt(3)",
                          "1//2", "-pi", "2*pi", "1/2/3", "."}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_exact(bad), ParseError);
  }
  CHECK_THROWS_AS(parse_exact("1/0"), MalformedInput);
}

TEST_CASE("to_string round-trips through the parser") {
  SurdGen gen;
  for (int i = 0; i < 300; ++i) {
    const ExactNumber x = normalize(QuadSurd{gen.rational(99), gen.rational(99), BigInt(gen.radicand())});
    CAPTURE(to_string(x));
    CHECK(parse_exact(to_string(x)) == x);
  }
  CHECK(to_string(parse_exact("2-sqrt(2)")) == "2-sqrt(2)");
  CHECK(to_string(ExactNumber(Constant::Pi)) == "pi");
}
