#pragma once

// Arithmetic nature of e_q(z), W_q(z), d ln_q/dz and the power tower
// r^(r^r) for exact inputs. Every Transcendental verdict names the rule
// whose hypotheses were checked on the exact inputs; nothing here looks at
// floating-point values.
//
// Decision orders are fixed and documented on each function; the first
// matching case wins.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlambert/exact_numbers.hpp"

namespace qlambert {

enum class Rule {
  Theorem1,       ///< q algebraic irrational  =>  W_q(1) transcendental
  Theorem2,       ///< q algebraic irrational, z != 0 algebraic  =>  e_q(z) transcendental
  Theorem3,       ///< q algebraic irrational, z != 0 algebraic  =>  W_q(z) transcendental
  Theorem4,       ///< q algebraic irrational, z0 algebraic, z0 != 0, 1  =>  z0^(-q) transcendental
  Theorem5,       ///< z transcendental, q rational != 1  =>  e_q(z) transcendental
  Theorem6,       ///< r in Q \ Z, r > 0  =>  r^(r^r) transcendental
  ClassicalExp,   ///< Hermite-Lindemann: e^z for algebraic z != 0
  ClassicalW1,    ///< W(1) = Omega
  ClosedFormQ2,   ///< W_2(z) = z/(1+z)
  CutoffZero,     ///< e_q(z) = 0 where 1 + (1-q)z <= 0 (q < 1 at equality)
  ExactValue,     ///< value computed exactly by field arithmetic
  GuardFallthrough,
};

std::string_view to_string(Rule r);

struct Classification {
  ArithmeticClass verdict = ArithmeticClass::Unknown;
  Rule rule = Rule::GuardFallthrough;
  /// Facts applied, in order.
  std::vector<std::string> justification;
  std::optional<ExactNumber> exact_value;
};

/// e_q(z).
///  (a) z = 0                                         -> Rational 1
///  (b) q = 1, z algebraic != 0                       -> Transcendental (ClassicalExp)
///  (c) q != 1, 1 + (1-q)z < 0 (or = 0 with q < 1)    -> Rational 0 (CutoffZero)
///      decided exactly; for z = e or pi through rational enclosures.
///      1 + (1-q)z = 0 with q > 1 diverges: DomainError.
///  (d) q algebraic irrational, z algebraic != 0       -> Transcendental (Theorem2)
///  (e) q rational != 1, z in {e, pi}                  -> Transcendental (Theorem5)
///  (f) otherwise                                      -> Unknown
Classification classify_expq(const ExactNumber& q, const ExactNumber& z);

/// Any real solution w of w e_q(w) = z.
///  (a) z = 0                                -> Rational 0
///  (b) q = 2: z must exceed -1 (DomainError otherwise); exact z/(1+z), or
///      Transcendental for z in {e, pi} (ClosedFormQ2)
///  (c) q = 1, z = 1                         -> Transcendental (ClassicalW1)
///  (d) q algebraic irrational, z = 1        -> Transcendental (Theorem1)
///  (e) q algebraic irrational, z != 0 alg.  -> Transcendental (Theorem3)
///  (f) otherwise                            -> Unknown
Classification classify_wq(const ExactNumber& q, const ExactNumber& z);

/// d ln_q/dz at z0, i.e. z0^(-q). Requires z0 > 0 (DomainError otherwise).
///  (a) z0 = 1                                          -> Rational 1
///  (b) q algebraic irrational, z0 algebraic != 1       -> Transcendental (Theorem4)
///  (c) q integer with |q| <= kMaxExactExponent, z0 algebraic -> exact power
///  (d) otherwise                                       -> Unknown
Classification classify_lnq_derivative(const ExactNumber& q, const ExactNumber& z0);

inline constexpr long long kMaxExactExponent = 4096;

/// r^(r^r), read right-associatively.
///  r rational, non-integer, r > 0  -> Transcendental (Theorem6)
///  r algebraic, non-integer, r < 0 -> UnsupportedOperand (no real value)
///  everything else                 -> Unknown
Classification classify_tower(const ExactNumber& r);

/// Exact sign of 1 + (1-q) z for algebraic q. When z is e or pi the sign is
/// decided with shrinking rational enclosures of the constant; nullopt if the
/// enclosure budget runs out or q itself is e or pi.
std::optional<int> cutoff_base_sign(const ExactNumber& q, const ExactNumber& z);

/// Rational interval [lo, hi] containing the constant, of width <= 10^-digits.
std::pair<Rational, Rational> enclose(Constant c, int digits);

}  // namespace qlambert
