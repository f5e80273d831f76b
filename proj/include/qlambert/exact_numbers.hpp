#pragma once

// Exact numbers the transcendence rules quantify over: rationals, real
// quadratic surds a + b*sqrt(d), and the two named constants e and pi.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace qlambert {

using BigInt = boost::multiprecision::cpp_int;

/// Reduced fraction num/den with den >= 1. Every constructor reduces.
class Rational {
public:
  Rational() = default;
  Rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt num, BigInt den = 1);

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return num_.sign(); }

  Rational operator-() const;
  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x, const Rational& y);
  friend Rational operator*(const Rational& x, const Rational& y);
  /// Throws DivisionByZero when y is zero.
  friend Rational operator/(const Rational& x, const Rational& y);

  friend bool operator==(const Rational& x, const Rational& y) = default;
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

  std::string to_string() const;

private:
  BigInt num_{0};
  BigInt den_{1};
};

/// a + b*sqrt(d). May be non-canonical until passed through normalize().
struct QuadSurd {
  Rational a;
  Rational b;
  BigInt d;

  friend bool operator==(const QuadSurd&, const QuadSurd&) = default;
};

enum class Constant { E, Pi };

struct NamedTranscendental {
  Constant tag;

  friend bool operator==(const NamedTranscendental&, const NamedTranscendental&) = default;
};

enum class ArithmeticClass { Rational, AlgebraicIrrational, Transcendental, Unknown };

std::string_view to_string(ArithmeticClass c);
std::string_view to_string(Constant c);

/// Largest radicand accepted by normalization (trial division bound).
inline constexpr std::uint64_t kMaxRadicand = 1'000'000'000'000'000ULL;

/// Canonical exact number. Constructing from a QuadSurd normalizes it, so a
/// held surd always has squarefree d >= 2 and b != 0.
class ExactNumber {
public:
  using Repr = std::variant<Rational, QuadSurd, NamedTranscendental>;

  ExactNumber() : repr_(Rational{}) {}
  ExactNumber(Rational r) : repr_(std::move(r)) {}        // NOLINT(google-explicit-constructor)
  ExactNumber(long long n) : repr_(Rational{n}) {}        // NOLINT(google-explicit-constructor)
  ExactNumber(const QuadSurd& s);                         // NOLINT(google-explicit-constructor)
  ExactNumber(Constant c) : repr_(NamedTranscendental{c}) {}  // NOLINT(google-explicit-constructor)

  static ExactNumber surd(Rational a, Rational b, long long d) {
    return ExactNumber(QuadSurd{std::move(a), std::move(b), BigInt(d)});
  }

  const Repr& repr() const noexcept { return repr_; }

  bool is_rational() const noexcept { return std::holds_alternative<Rational>(repr_); }
  bool is_surd() const noexcept { return std::holds_alternative<QuadSurd>(repr_); }
  bool is_transcendental() const noexcept {
    return std::holds_alternative<NamedTranscendental>(repr_);
  }
  bool is_algebraic() const noexcept { return !is_transcendental(); }

  const Rational* rational() const noexcept { return std::get_if<Rational>(&repr_); }
  const QuadSurd* quad_surd() const noexcept { return std::get_if<QuadSurd>(&repr_); }
  const NamedTranscendental* constant() const noexcept {
    return std::get_if<NamedTranscendental>(&repr_);
  }

  bool is_exactly(const Rational& r) const noexcept {
    const auto* p = rational();
    return p != nullptr && *p == r;
  }

  friend bool operator==(const ExactNumber&, const ExactNumber&) = default;

private:
  struct Raw {};
  ExactNumber(Raw, Repr r) : repr_(std::move(r)) {}
  friend ExactNumber normalize(const QuadSurd& s);

  Repr repr_;
};

/// Canonical form of a raw surd: squarefree radicand, b = 0 and perfect
/// squares collapse to Rational. Throws MalformedInput for d < 0 or d above
/// kMaxRadicand.
ExactNumber normalize(const QuadSurd& s);
/// Re-canonicalizes; idempotent.
ExactNumber normalize(const ExactNumber& x);

/// True iff x satisfies every representation invariant.
bool is_canonical(const ExactNumber& x);

// Field arithmetic inside Q or a single Q(sqrt(d)). Mixed radicands throw
// UnsupportedField, e/pi operands throw UnsupportedOperand.
ExactNumber add(const ExactNumber& x, const ExactNumber& y);
ExactNumber sub(const ExactNumber& x, const ExactNumber& y);
ExactNumber mul(const ExactNumber& x, const ExactNumber& y);
ExactNumber div(const ExactNumber& x, const ExactNumber& y);
ExactNumber neg(const ExactNumber& x);
/// x^n for an integer exponent, by repeated squaring. 0^n with n <= 0 throws DivisionByZero
/// (n < 0) or returns 1 (n == 0).
ExactNumber power(const ExactNumber& x, long long n);

inline ExactNumber operator+(const ExactNumber& x, const ExactNumber& y) { return add(x, y); }
inline ExactNumber operator-(const ExactNumber& x, const ExactNumber& y) { return sub(x, y); }
inline ExactNumber operator*(const ExactNumber& x, const ExactNumber& y) { return mul(x, y); }
inline ExactNumber operator/(const ExactNumber& x, const ExactNumber& y) { return div(x, y); }
inline ExactNumber operator-(const ExactNumber& x) { return neg(x); }

/// Exact sign of a rational or surd, decided with integer comparisons only.
int sign(const ExactNumber& x);

ArithmeticClass classify_number(const ExactNumber& x);

/// Nearest-double approximation; computed in 50-digit binary floating point
/// before the final rounding.
double to_real(const ExactNumber& x);

/// Text form in the input grammar; parse_exact(to_string(x)) == x.
std::string to_string(const ExactNumber& x);

/// Parses `p`, `p/q`, decimals, `a+b*sqrt(d)`, `a-b*sqrt(d)`, `sqrt(d)`,
/// `-sqrt(d)`, `e`, `pi`. Whitespace is ignored; keywords are
/// case-insensitive. Throws ParseError (or MalformedInput for 1/0).
ExactNumber parse_exact(std::string_view text);

/// Radicand of x's field: d for a surd, nullopt for rationals and constants.
std::optional<BigInt> field_radicand(const ExactNumber& x);

}  // namespace qlambert
