#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational scalar backed by GMP.
 *
 * Values are kept in canonical form after every operation: the
 * denominator is positive and coprime to the numerator, and zero is 0/1.
 * Text form is "p/q", or just "p" when q = 1.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace rlah {

class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpz_class& value) : q_(value) {}
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class value);

  // The exact value of a finite binary64 (a dyadic rational).
  static Rational from_double(double value);

  // Accepts "p/q", "p", or a plain decimal "[-]digits[.digits]", which is
  // read exactly as p/10^m.
  static Rational parse(std::string_view text);

  const mpq_class& value() const { return q_; }
  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return den() == 1; }

  // Nearest binary64, ties resolved upward.
  double to_double() const;
  // Natural log of a positive value; safe for magnitudes far outside
  // the binary64 range.
  double log() const;

  std::string str() const { return q_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }

  Rational& operator+=(const Rational& rhs) {
    q_ += rhs.q_;
    return *this;
  }
  Rational& operator-=(const Rational& rhs) {
    q_ -= rhs.q_;
    return *this;
  }
  Rational& operator*=(const Rational& rhs) {
    q_ *= rhs.q_;
    return *this;
  }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

// base^exponent for a non-negative exponent.
Rational pow(const Rational& base, unsigned exponent);

// Natural log of a positive big integer.
double log_of(const mpz_class& value);

}  // namespace rlah
