#include <cctype>
#include <optional>
#include <string>

#include "qlambert/errors.hpp"
#include "qlambert/exact_numbers.hpp"

namespace qlambert {

namespace {

class Parser {
public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  ExactNumber parse() {
    if (s_.empty()) fail("empty input");
    if (s_ == "e") return ExactNumber(Constant::E);
    if (s_ == "pi") return ExactNumber(Constant::Pi);

    std::optional<Rational> rational_part;
    std::optional<QuadSurd> surd_part;
    int terms = 0;
    while (pos_ < s_.size()) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
      } else if (terms > 0) {
        fail("expected '+' or '-'");
      }
      if (++terms > 2) fail("at most a rational and a surd term are allowed");

      Rational coeff(1);
      bool has_number = false;
      if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
        coeff = number();
        has_number = true;
      }
      if (negative) coeff = -coeff;

      bool is_surd = false;
      if (has_number && peek() == '*') {
        ++pos_;
        expect_sqrt();
        is_surd = true;
      } else if (!has_number) {
        expect_sqrt();
        is_surd = true;
      }

      if (is_surd) {
        BigInt radicand = integer();
        expect(')');
        if (surd_part) fail("more than one sqrt term");
        surd_part = QuadSurd{Rational{}, coeff, radicand};
      } else {
        if (rational_part) fail("more than one rational term");
        rational_part = coeff;
      }
    }

    QuadSurd raw{rational_part.value_or(Rational{}), Rational{}, BigInt(0)};
    if (surd_part) {
      raw.b = surd_part->b;
      raw.d = surd_part->d;
    }
    return normalize(raw);
  }

private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse exact number '" + s_ + "' at offset " + std::to_string(pos_) +
                     ": " + why);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void expect_sqrt() {
    if (s_.compare(pos_, 5, "sqrt(") != 0) fail("expected a number or sqrt(d)");
    pos_ += 5;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  BigInt integer() {
    std::string d = digits();
    if (d.empty()) fail("expected digits");
    return BigInt(d);
  }

  // digits ['.' digits] | digits '/' digits
  Rational number() {
    std::string whole = digits();
    if (peek() == '.') {
      ++pos_;
      std::string frac = digits();
      if (whole.empty() && frac.empty()) fail("expected digits");
      BigInt scale(1);
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      return Rational(BigInt(whole.empty() ? "0" : whole) * scale + BigInt(frac.empty() ? "0" : frac),
                      scale);
    }
    BigInt num(whole);
    if (peek() == '/') {
      ++pos_;
      BigInt den = integer();
      return Rational(num, den);  // throws MalformedInput on zero
    }
    return Rational(num);
  }

  std::string s_;
  std::size_t pos_ = 0;
};

std::string canonical_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

ExactNumber parse_exact(std::string_view text) {
  return Parser(canonical_text(text)).parse();
}

}  // namespace qlambert
