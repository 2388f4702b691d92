#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "redten/error.hpp"

namespace redten {

// Exact rational scalar. Wraps mpq_class as a plain value type so that Eigen
// expressions see ordinary value-returning operators (gmpxx's own expression
// templates stay contained).
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}          // NOLINT: implicit by design, Scalar(0)
  Rational(int n) : v_(long(n)) {}     // NOLINT
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw Error(Error::Kind::DivisionByZero, "rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rational(const std::string& s) : v_(s) { v_.canonicalize(); }

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(Error::Kind::DivisionByZero, "rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }

  // Exact long accessors, throwing when out of range (used by JSON emission).
  bool fits_long() const { return v_.get_num().fits_slong_p() && v_.get_den().fits_slong_p(); }
  long num_long() const { return v_.get_num().get_si(); }
  long den_long() const { return v_.get_den().get_si(); }

 private:
  mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational rational_from_string(const std::string& s);

}  // namespace redten

#include <ostream>

namespace redten {
inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.raw(); }
inline Rational rational_from_string(const std::string& s) { return Rational(s); }
}  // namespace redten

namespace Eigen {
template <>
struct NumTraits<redten::Rational> : GenericNumTraits<redten::Rational> {
  typedef redten::Rational Real;
  typedef redten::Rational NonInteger;
  typedef redten::Rational Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 30,
  };
  static inline Real epsilon() { return redten::Rational(0); }
  static inline Real dummy_precision() { return redten::Rational(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
