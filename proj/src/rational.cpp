#include "satlab/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace satlab {

namespace {

bool valid_integer_text(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) {
    if (s.size() == 1) return false;
    i = 1;
  }
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_integer_text(num, true) || !valid_integer_text(den, false)) {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  mpz_class zn(n, 10);
  mpz_class zd(std::string(den), 10);
  if (zd == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
  mpq_class q(zn, zd);
  q.canonicalize();
  return Rational(q);
}

bool Rational::is_integer() const { return value_.get_den() == 1; }

long Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("rational floor does not fit in long");
  return q.get_si();
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.is_zero()) throw std::domain_error("division by zero rational");
  value_ /= other.value_;
  return *this;
}

void Rational::sub_mul(const Rational& a, const Rational& b) {
  thread_local mpq_class scratch;
  mpq_mul(scratch.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
  mpq_sub(value_.get_mpq_t(), value_.get_mpq_t(), scratch.get_mpq_t());
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

Rational inverse_power_of_two(unsigned k) {
  mpz_class den = 1;
  den <<= k;
  return Rational(mpq_class(mpz_class(1), den));
}

}  // namespace satlab
