#include "qlambert/exact_numbers.hpp"

#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/integer.hpp>

#include "qlambert/errors.hpp"

namespace qlambert {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Splits d = s^2 * core with core squarefree, by trial division.
std::pair<std::uint64_t, std::uint64_t> square_split(std::uint64_t d) {
  std::uint64_t square_root_part = 1;
  std::uint64_t core = 1;
  for (std::uint64_t p = 2; p * p <= d; ++p) {
    int multiplicity = 0;
    while (d % p == 0) {
      d /= p;
      ++multiplicity;
    }
    for (int i = 0; i + 1 < multiplicity; i += 2) square_root_part *= p;
    if (multiplicity % 2 == 1) core *= p;
  }
  core *= d;  // leftover prime (or 1)
  return {square_root_part, core};
}

struct SurdView {
  Rational a;
  Rational b;
  BigInt d;  // 0 when the number is rational
};

SurdView view(const ExactNumber& x, const char* op) {
  return std::visit(
      Overloaded{
          [](const Rational& r) { return SurdView{r, Rational{}, BigInt(0)}; },
          [](const QuadSurd& s) { return SurdView{s.a, s.b, s.d}; },
          [op](const NamedTranscendental& t) -> SurdView {
            throw UnsupportedOperand(std::string(op) + ": " + std::string(to_string(t.tag)) +
                                     " is an opaque constant with no arithmetic");
          },
      },
      x.repr());
}

BigInt common_field(const SurdView& x, const SurdView& y, const char* op) {
  if (x.d != 0 && y.d != 0 && x.d != y.d) {
    std::ostringstream msg;
    msg << op << ": operands lie in different fields Q(sqrt(" << x.d << ")) and Q(sqrt(" << y.d
        << "))";
    throw UnsupportedField(msg.str());
  }
  return x.d != 0 ? x.d : y.d;
}

ExactNumber make(Rational a, Rational b, BigInt d) {
  if (d == 0 || b.is_zero()) return ExactNumber(std::move(a));
  return normalize(QuadSurd{std::move(a), std::move(b), std::move(d)});
}

Float50 to_float50(const Rational& r) {
  return Float50(r.num()) / Float50(r.den());
}

}  // namespace

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw MalformedInput("rational with zero denominator");
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational operator+(const Rational& x, const Rational& y) {
  return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

Rational operator-(const Rational& x, const Rational& y) {
  return Rational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
}

Rational operator*(const Rational& x, const Rational& y) {
  return Rational(x.num_ * y.num_, x.den_ * y.den_);
}

Rational operator/(const Rational& x, const Rational& y) {
  if (y.is_zero()) throw DivisionByZero("division by exact zero");
  return Rational(x.num_ * y.den_, x.den_ * y.num_);
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
  const BigInt lhs = x.num_ * y.den_;
  const BigInt rhs = y.num_ * x.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  std::string s = num_.str();
  if (den_ != 1) s += "/" + den_.str();
  return s;
}

// ---------------------------------------------------------------------------
// ExactNumber

std::string_view to_string(ArithmeticClass c) {
  switch (c) {
    case ArithmeticClass::Rational: return "Rational";
    case ArithmeticClass::AlgebraicIrrational: return "AlgebraicIrrational";
    case ArithmeticClass::Transcendental: return "Transcendental";
    case ArithmeticClass::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(Constant c) {
  return c == Constant::E ? "e" : "pi";
}

ExactNumber::ExactNumber(const QuadSurd& s) : repr_(normalize(s).repr_) {}

ExactNumber normalize(const QuadSurd& s) {
  if (s.d.sign() < 0) throw MalformedInput("negative radicand " + s.d.str());
  if (s.d > kMaxRadicand) throw MalformedInput("radicand " + s.d.str() + " exceeds supported size");
  if (s.b.is_zero() || s.d.is_zero()) return ExactNumber(s.a);

  const auto [root_part, core] = square_split(s.d.convert_to<std::uint64_t>());
  Rational b = s.b * Rational(BigInt(root_part));
  if (core == 1) return ExactNumber(s.a + b);
  return ExactNumber(ExactNumber::Raw{}, QuadSurd{s.a, std::move(b), BigInt(core)});
}

ExactNumber normalize(const ExactNumber& x) {
  if (const auto* s = x.quad_surd()) return normalize(*s);
  return x;
}

bool is_canonical(const ExactNumber& x) {
  if (const auto* r = x.rational()) {
    return r->den() >= 1 && boost::multiprecision::gcd(r->num(), r->den()) == 1;
  }
  if (const auto* s = x.quad_surd()) {
    if (s->b.is_zero() || s->d < 2 || s->d > kMaxRadicand) return false;
    const auto [root_part, core] = square_split(s->d.convert_to<std::uint64_t>());
    return root_part == 1 && core == s->d;
  }
  return true;
}

ExactNumber add(const ExactNumber& x, const ExactNumber& y) {
  const SurdView u = view(x, "add");
  const SurdView v = view(y, "add");
  BigInt d = common_field(u, v, "add");
  return make(u.a + v.a, u.b + v.b, std::move(d));
}

ExactNumber sub(const ExactNumber& x, const ExactNumber& y) {
  const SurdView u = view(x, "sub");
  const SurdView v = view(y, "sub");
  BigInt d = common_field(u, v, "sub");
  return make(u.a - v.a, u.b - v.b, std::move(d));
}

ExactNumber mul(const ExactNumber& x, const ExactNumber& y) {
  const SurdView u = view(x, "mul");
  const SurdView v = view(y, "mul");
  BigInt d = common_field(u, v, "mul");
  const Rational dr(d);
  return make(u.a * v.a + u.b * v.b * dr, u.a * v.b + u.b * v.a, std::move(d));
}

ExactNumber div(const ExactNumber& x, const ExactNumber& y) {
  const SurdView u = view(x, "div");
  const SurdView v = view(y, "div");
  BigInt d = common_field(u, v, "div");
  const Rational dr(d);
  // (a + b r)/(c + e r) = (a + b r)(c - e r) / (c^2 - e^2 d); the norm is zero
  // only for the zero divisor because sqrt(d) is irrational.
  const Rational norm = v.a * v.a - v.b * v.b * dr;
  if (norm.is_zero()) throw DivisionByZero("division by exact zero");
  Rational a = (u.a * v.a - u.b * v.b * dr) / norm;
  Rational b = (u.b * v.a - u.a * v.b) / norm;
  return make(std::move(a), std::move(b), std::move(d));
}

ExactNumber neg(const ExactNumber& x) {
  const SurdView u = view(x, "neg");
  return make(-u.a, -u.b, u.d);
}

ExactNumber power(const ExactNumber& x, long long n) {
  view(x, "power");  // rejects constants
  if (n < 0) return div(ExactNumber(1), power(x, -n));
  ExactNumber result(1);
  ExactNumber base = x;
  auto e = static_cast<unsigned long long>(n);
  while (e != 0) {
    if (e & 1ULL) result = mul(result, base);
    e >>= 1;
    if (e != 0) base = mul(base, base);
  }
  return result;
}

int sign(const ExactNumber& x) {
  const SurdView u = view(x, "sign");
  if (u.b.is_zero()) return u.a.sign();
  const int sa = u.a.sign();
  const int sb = u.b.sign();
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger of a^2 and b^2 d wins. Equality is impossible
  // for squarefree d >= 2.
  const Rational a2 = u.a * u.a;
  const Rational b2d = u.b * u.b * Rational(u.d);
  return a2 > b2d ? sa : sb;
}

ArithmeticClass classify_number(const ExactNumber& x) {
  return std::visit(Overloaded{
                        [](const Rational&) { return ArithmeticClass::Rational; },
                        [](const QuadSurd&) { return ArithmeticClass::AlgebraicIrrational; },
                        [](const NamedTranscendental&) { return ArithmeticClass::Transcendental; },
                    },
                    x.repr());
}

double to_real(const ExactNumber& x) {
  return std::visit(
      Overloaded{
          [](const Rational& r) { return to_float50(r).convert_to<double>(); },
          [](const QuadSurd& s) {
            const Float50 root = boost::multiprecision::sqrt(Float50(s.d));
            return (to_float50(s.a) + to_float50(s.b) * root).convert_to<double>();
          },
          [](const NamedTranscendental& t) {
            return t.tag == Constant::E ? std::numbers::e : std::numbers::pi;
          },
      },
      x.repr());
}

std::string to_string(const ExactNumber& x) {
  return std::visit(Overloaded{
                        [](const Rational& r) { return r.to_string(); },
                        [](const QuadSurd& s) {
                          std::string out;
                          if (!s.a.is_zero()) out = s.a.to_string();
                          const Rational abs_b = s.b.sign() < 0 ? -s.b : s.b;
                          if (s.b.sign() < 0) {
                            out += "-";
                          } else if (!out.empty()) {
                            out += "+";
                          }
                          if (abs_b != Rational(1)) out += abs_b.to_string() + "*";
                          out += "sqrt(" + s.d.str() + ")";
                          return out;
                        },
                        [](const NamedTranscendental& t) { return std::string(to_string(t.tag)); },
                    },
                    x.repr());
}

std::optional<BigInt> field_radicand(const ExactNumber& x) {
  if (const auto* s = x.quad_surd()) return s->d;
  return std::nullopt;
}

}  // namespace qlambert
