#pragma once

#include <Eigen/Core>
#include <complex>
#include <iosfwd>
#include <vector>

#include "redten/error.hpp"
#include "redten/rational.hpp"

namespace redten {

// Exact element of the cyclotomic field Q(zeta_M), stored in the power basis
// 1, zeta, ..., zeta^{phi(M)-1} reduced modulo the M-th cyclotomic polynomial.
// Equality is coefficient-wise; the representation is canonical.
//
// Arithmetic requires equal conductors. Values that are plain rationals are
// lifted on the fly; anything else must go through conductor_lift first.
class Cyclo {
 public:
  Cyclo();                     // 0 at conductor 1
  Cyclo(long n);               // NOLINT: rational n at conductor 1
  Cyclo(int n);                // NOLINT
  Cyclo(const Rational& r);    // NOLINT: rational at conductor 1

  static Cyclo zeta(long M, long exponent = 1);
  static Cyclo from_rational(const Rational& r, long M);
  static Cyclo from_coeffs(long M, std::vector<Rational> coeffs);  // length phi(M)

  long conductor() const { return M_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;               // no zeta-component
  Rational rational_value() const;        // throws unless is_rational()

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& operator/=(const Cyclo& o);

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { a += b; return a; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { a -= b; return a; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { a *= b; return a; }
  friend Cyclo operator/(Cyclo a, const Cyclo& b) { a /= b; return a; }

  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  Cyclo inverse() const;  // throws DivisionByZero on 0

  // Same field element viewed in Q(zeta_{Mnew}); requires M | Mnew.
  Cyclo lifted(long Mnew) const;

  // Galois conjugation zeta -> zeta^{-1} (complex conjugation under the
  // standard embedding); an involution fixing rationals.
  Cyclo conjugated() const;

  // Numerical value under zeta_M -> exp(2*pi*i/M), with a rigorous-enough
  // error radius for sign checks (64-bit evaluation).
  std::complex<double> embed(double* error_radius = nullptr) const;

  std::string str() const;

 private:
  long M_;
  std::vector<Rational> c_;  // length phi(M_)

  void reduce_against(const Cyclo& o, const Cyclo*& a, const Cyclo*& b, Cyclo& sa, Cyclo& sb) const;
};

// Exact square root of a positive integer as an element of Q(zeta_M).
// Built from quadratic Gauss sums per prime of the square-free part; the
// result squares to n exactly and is the positive root under the standard
// embedding. Requires 4n | M unless n is a perfect square.
Cyclo sqrt_int(long n, long M);

// Euler phi and the conductor recommended for a group session:
// lcm(exponent, 4|G|, 4*max_dim).
long euler_phi(long M);
long lcm_long(long a, long b);

std::ostream& operator<<(std::ostream& os, const Cyclo& x);

}  // namespace redten

namespace Eigen {
template <>
struct NumTraits<redten::Cyclo> : GenericNumTraits<redten::Cyclo> {
  typedef redten::Cyclo Real;
  typedef redten::Cyclo NonInteger;
  typedef redten::Cyclo Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 60,
    MulCost = 120,
  };
  static inline Real epsilon() { return redten::Cyclo(0); }
  static inline Real dummy_precision() { return redten::Cyclo(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
