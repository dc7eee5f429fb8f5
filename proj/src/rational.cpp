#include "rlah/rational.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "rlah/errors.hpp"

namespace rlah {

Rational::Rational(long num, long den) : q_(num, den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_.canonicalize();
}

Rational::Rational(mpq_class value) : q_(std::move(value)) {
  if (q_.get_den() == 0) throw DomainError("rational with zero denominator");
  q_.canonicalize();
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot promote a non-finite double");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return Rational(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw InvalidParameter("not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  auto is_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };

  std::string_view body = text;
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  mpz_class num;
  mpz_class den = 1;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto p = body.substr(0, slash);
    const auto q = body.substr(slash + 1);
    if (!is_digits(p) || !is_digits(q)) return fail();
    num = mpz_class(std::string(p), 10);
    den = mpz_class(std::string(q), 10);
    if (den == 0) throw InvalidParameter("zero denominator in '" + std::string(text) + "'");
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !is_digits(whole)) ||
        (!frac.empty() && !is_digits(frac)))
      return fail();
    num = mpz_class(std::string(whole) + std::string(frac), 10);
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  } else {
    if (!is_digits(body)) return fail();
    num = mpz_class(std::string(body), 10);
  }
  if (negative) num = -num;
  return Rational(num, den);
}

double Rational::to_double() const {
  // mpq_get_d truncates toward zero; step to the neighbour when it is
  // nearer, or equally near and above.
  const double t = q_.get_d();
  if (!std::isfinite(t)) return t;
  const Rational lo = from_double(t);
  if (lo == *this) return t;
  const double other = (*this > lo) ? std::nextafter(t, std::numeric_limits<double>::infinity())
                                     : std::nextafter(t, -std::numeric_limits<double>::infinity());
  if (!std::isfinite(other)) return t;
  const Rational hi = from_double(other);
  mpq_class d_t = q_ - lo.q_;
  mpq_class d_o = hi.q_ - q_;
  d_t = abs(d_t);
  d_o = abs(d_o);
  const int c = cmp(d_o, d_t);
  if (c < 0) return other;
  if (c > 0) return t;
  return std::max(t, other);
}

double log_of(const mpz_class& value) {
  if (sgn(value) <= 0) throw DomainError("log of a non-positive integer");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, value.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double Rational::log() const {
  if (sign() <= 0) throw DomainError("log of a non-positive rational");
  return log_of(num()) - log_of(den());
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  q_ /= rhs.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), exponent);
  return Rational(n, d);
}

}  // namespace rlah
