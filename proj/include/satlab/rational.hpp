#ifndef SATLAB_RATIONAL_HPP_
#define SATLAB_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace satlab {

// Exact fraction in canonical form (positive denominator, reduced).
//
// Thin value wrapper over GMP's mpq_class. All thresholds, weights and LP
// coefficients in the library are Rationals; nothing is ever rounded.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

  // Accepts "p/q", "p" or "-p/q"; throws std::invalid_argument otherwise.
  static Rational parse(std::string_view text);

  // Canonical text: "p/q", or "p" when the denominator is 1.
  std::string str() const { return value_.get_str(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  // Largest integer <= value (value must fit in a long).
  long floor() const;
  double to_double() const { return value_.get_d(); }

  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& other) { value_ += other.value_; return *this; }
  Rational& operator-=(const Rational& other) { value_ -= other.value_; return *this; }
  Rational& operator*=(const Rational& other) { value_ *= other.value_; return *this; }
  Rational& operator/=(const Rational& other);

  // this -= a * b without materialising a temporary Rational.
  void sub_mul(const Rational& a, const Rational& b);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& x) { return Rational(mpq_class(-x.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x);

 private:
  mpq_class value_{0};
};

// 1 / 2^k as an exact rational.
Rational inverse_power_of_two(unsigned k);

}  // namespace satlab

#endif  // SATLAB_RATIONAL_HPP_
