#include "redten/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace redten {

namespace {

using Poly = std::vector<Rational>;  // coefficients, low degree first

int degree(const Poly& p) {
  for (int i = int(p.size()) - 1; i >= 0; --i)
    if (!p[i].is_zero()) return i;
  return -1;
}

void trim(Poly& p) { p.resize(size_t(degree(p) + 1)); }

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

// Exact division with remainder; q, r with a = q*b + r, deg r < deg b.
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  int db = degree(b);
  r = a;
  trim(r);
  q.assign(r.size(), Rational(0));
  while (degree(r) >= db) {
    int dr = degree(r);
    Rational coef = r[size_t(dr)] / b[size_t(db)];
    q[size_t(dr - db)] += coef;
    for (int i = 0; i <= db; ++i) r[size_t(dr - db + i)] -= coef * b[size_t(i)];
    trim(r);
    if (r.empty()) break;
  }
  trim(q);
}

struct Ctx {
  long M = 1;
  int deg = 1;
  Poly phi;                             // cyclotomic polynomial Phi_M, monic
  std::vector<Poly> zeta_pow;           // x^e mod Phi_M for e in [0, M)
};

std::map<long, Ctx>& ctx_cache() {
  static std::map<long, Ctx> cache;
  return cache;
}

Poly cyclotomic_poly(long M);

const Ctx& ctx(long M) {
  auto& cache = ctx_cache();
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  Ctx c;
  c.M = M;
  c.phi = cyclotomic_poly(M);
  c.deg = degree(c.phi);
  c.zeta_pow.resize(size_t(M));
  Poly cur{Rational(1)};
  cur.resize(size_t(c.deg), Rational(0));
  for (long e = 0; e < M; ++e) {
    c.zeta_pow[size_t(e)] = cur;
    // multiply by x, reduce by monic phi
    Poly next(size_t(c.deg) + 1, Rational(0));
    for (int i = 0; i < c.deg; ++i) next[size_t(i + 1)] = cur[size_t(i)];
    if (!next[size_t(c.deg)].is_zero()) {
      Rational lead = next[size_t(c.deg)];
      for (int i = 0; i <= c.deg; ++i) next[size_t(i)] -= lead * c.phi[size_t(i)];
    }
    next.resize(size_t(c.deg));
    cur = next;
  }
  return cache.emplace(M, std::move(c)).first->second;
}

// Phi_M by recursive division of x^M - 1 by Phi_d over proper divisors d.
Poly cyclotomic_poly(long M) {
  Poly num(size_t(M) + 1, Rational(0));
  num[0] = Rational(-1);
  num[size_t(M)] = Rational(1);
  for (long d = 1; d < M; ++d) {
    if (M % d != 0) continue;
    const Poly phid = (d == 1) ? Poly{Rational(-1), Rational(1)} : ctx(d).phi;
    Poly q, r;
    poly_divmod(num, phid, q, r);
    num = q;
  }
  return num;
}

Poly reduce_product(const Ctx& c, const Poly& prod) {
  Poly out(size_t(c.deg), Rational(0));
  for (size_t k = 0; k < prod.size(); ++k) {
    if (prod[k].is_zero()) continue;
    if (int(k) < c.deg) {
      out[k] += prod[k];
    } else {
      const Poly& row = c.zeta_pow[k % size_t(c.M)];
      // k < 2*deg - 1 <= M always holds for products of reduced elements
      for (int i = 0; i < c.deg; ++i) out[size_t(i)] += prod[k] * row[size_t(i)];
    }
  }
  return out;
}

}  // namespace

long euler_phi(long M) {
  long result = M, m = M;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

long lcm_long(long a, long b) { return std::lcm(a, b); }

Cyclo::Cyclo() : M_(1), c_{Rational(0)} {}
Cyclo::Cyclo(long n) : M_(1), c_{Rational(n)} {}
Cyclo::Cyclo(int n) : M_(1), c_{Rational(n)} {}
Cyclo::Cyclo(const Rational& r) : M_(1), c_{r} {}

Cyclo Cyclo::zeta(long M, long exponent) {
  const Ctx& c = ctx(M);
  long e = ((exponent % M) + M) % M;
  Cyclo x;
  x.M_ = M;
  x.c_ = c.zeta_pow[size_t(e)];
  return x;
}

Cyclo Cyclo::from_rational(const Rational& r, long M) {
  const Ctx& c = ctx(M);
  Cyclo x;
  x.M_ = M;
  x.c_.assign(size_t(c.deg), Rational(0));
  x.c_[0] = r;
  return x;
}

Cyclo Cyclo::from_coeffs(long M, std::vector<Rational> coeffs) {
  const Ctx& c = ctx(M);
  if (int(coeffs.size()) != c.deg)
    throw Error(Error::Kind::BadInput, "coefficient vector length != phi(M)");
  Cyclo x;
  x.M_ = M;
  x.c_ = std::move(coeffs);
  return x;
}

bool Cyclo::is_zero() const {
  for (const auto& r : c_)
    if (!r.is_zero()) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

Rational Cyclo::rational_value() const {
  if (!is_rational()) throw Error(Error::Kind::BadInput, "not a rational value");
  return c_[0];
}

Cyclo Cyclo::operator-() const {
  Cyclo x = *this;
  for (auto& r : x.c_) r = -r;
  return x;
}

// Aligns conductors for a binary op: equal conductors pass through, rational
// operands lift silently, anything else is a caller error.
void Cyclo::reduce_against(const Cyclo& o, const Cyclo*& a, const Cyclo*& b, Cyclo& sa,
                           Cyclo& sb) const {
  if (M_ == o.M_) {
    a = this;
    b = &o;
    return;
  }
  if (is_rational()) {
    sa = Cyclo::from_rational(c_[0], o.M_);
    a = &sa;
    b = &o;
    return;
  }
  if (o.is_rational()) {
    sb = Cyclo::from_rational(o.c_[0], M_);
    a = this;
    b = &sb;
    return;
  }
  throw Error(Error::Kind::ConductorMismatch,
              "conductor mismatch: " + std::to_string(M_) + " vs " + std::to_string(o.M_));
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  const Cyclo *a, *b;
  Cyclo sa, sb;
  reduce_against(o, a, b, sa, sb);
  Cyclo out = *a;
  for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] += b->c_[i];
  *this = std::move(out);
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  const Cyclo *a, *b;
  Cyclo sa, sb;
  reduce_against(o, a, b, sa, sb);
  Cyclo out = *a;
  for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] -= b->c_[i];
  *this = std::move(out);
  return *this;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  const Cyclo *a, *b;
  Cyclo sa, sb;
  reduce_against(o, a, b, sa, sb);
  const Ctx& c = ctx(a->M_);
  Poly prod = poly_mul(a->c_, b->c_);
  Cyclo out;
  out.M_ = a->M_;
  out.c_ = reduce_product(c, prod);
  *this = std::move(out);
  return *this;
}

Cyclo& Cyclo::operator/=(const Cyclo& o) { return *this *= o.inverse(); }

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.M_ == b.M_) return a.c_ == b.c_;
  long L = lcm_long(a.M_, b.M_);
  return a.lifted(L).c_ == b.lifted(L).c_;
}

// Extended Euclid in Q[x] against Phi_M (irreducible over Q).
Cyclo Cyclo::inverse() const {
  if (is_zero()) throw Error(Error::Kind::DivisionByZero, "inverse of zero");
  if (is_rational()) return Cyclo::from_rational(Rational(1) / c_[0], M_);
  const Ctx& cx = ctx(M_);
  Poly r0 = cx.phi, r1 = c_;
  trim(r1);
  Poly s0{}, s1{Rational(1)};  // coefficients of this-element in the combination
  while (degree(r1) > 0) {
    Poly q, r;
    poly_divmod(r0, r1, q, r);
    Poly s2 = s0;
    Poly qs1 = poly_mul(q, s1);
    s2.resize(std::max(s2.size(), qs1.size()), Rational(0));
    for (size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
    trim(s2);
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  if (degree(r1) != 0)
    throw Error(Error::Kind::DivisionByZero, "element not invertible (unexpected)");
  Rational lead = r1[0];
  Cyclo out;
  out.M_ = M_;
  out.c_.assign(size_t(cx.deg), Rational(0));
  for (size_t i = 0; i < s1.size() && i < out.c_.size(); ++i) out.c_[i] = s1[i] / lead;
  // s1 may exceed deg(phi) transiently; reduce to be safe
  if (int(s1.size()) > cx.deg) {
    Poly full(s1.begin(), s1.end());
    for (auto& v : full) v = v / lead;
    out.c_ = reduce_product(cx, full);
  }
  return out;
}

Cyclo Cyclo::lifted(long Mnew) const {
  if (Mnew == M_) return *this;
  if (Mnew % M_ != 0)
    throw Error(Error::Kind::NotAMultiple,
                std::to_string(Mnew) + " is not a multiple of " + std::to_string(M_));
  const Ctx& cn = ctx(Mnew);
  long stride = Mnew / M_;
  Cyclo out;
  out.M_ = Mnew;
  out.c_.assign(size_t(cn.deg), Rational(0));
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    const Poly& row = cn.zeta_pow[size_t((long(k) * stride) % Mnew)];
    for (int i = 0; i < cn.deg; ++i) out.c_[size_t(i)] += c_[k] * row[size_t(i)];
  }
  return out;
}

Cyclo Cyclo::conjugated() const {
  const Ctx& cx = ctx(M_);
  Cyclo out;
  out.M_ = M_;
  out.c_.assign(size_t(cx.deg), Rational(0));
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    const Poly& row = cx.zeta_pow[size_t((M_ - long(k)) % M_)];
    for (int i = 0; i < cx.deg; ++i) out.c_[size_t(i)] += c_[k] * row[size_t(i)];
  }
  return out;
}

std::complex<double> Cyclo::embed(double* error_radius) const {
  std::complex<double> acc(0.0, 0.0);
  double absacc = 0.0;
  const double twopi = 6.283185307179586476925286766559;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    double ck = c_[k].to_double();
    double ang = twopi * double(k) / double(M_);
    acc += ck * std::complex<double>(std::cos(ang), std::sin(ang));
    absacc += std::abs(ck);
  }
  if (error_radius) *error_radius = absacc * 1e-12 + 1e-300;
  return acc;
}

std::string Cyclo::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclo& x) {
  if (x.is_rational()) return os << (x.coeffs().empty() ? Rational(0) : x.coeffs()[0]);
  os << "(";
  bool first = true;
  for (size_t k = 0; k < x.coeffs().size(); ++k) {
    if (x.coeffs()[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << x.coeffs()[k];
    if (k > 0) os << "*z" << x.conductor() << "^" << k;
  }
  os << ")";
  return os;
}

namespace {

// square-free decomposition n = k^2 * m
void square_free(long n, long& k, long& m) {
  k = 1;
  m = 1;
  for (long p = 2; p * p <= n; ++p) {
    long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (long i = 0; i < e / 2; ++i) k *= p;
    if (e % 2) m *= p;
  }
  m *= n;
}

Cyclo gauss_sqrt_prime(long p, long M) {
  if (p == 2) {
    long e = M / 8;
    return Cyclo::zeta(M, e) + Cyclo::zeta(M, M - e);
  }
  // quadratic Gauss sum; classical evaluation gives sqrt(p) for p=1 mod 4
  // and i*sqrt(p) for p=3 mod 4
  Cyclo g = Cyclo::from_rational(Rational(0), M);
  long step = M / p;
  for (long a = 0; a < p; ++a) g += Cyclo::zeta(M, step * ((a * a) % p));
  if (p % 4 == 1) return g;
  return Cyclo::zeta(M, (3 * M) / 4) * g;  // -i * g
}

}  // namespace

Cyclo sqrt_int(long n, long M) {
  if (n <= 0) throw Error(Error::Kind::BadInput, "sqrt_int requires a positive integer");
  long k, m;
  square_free(n, k, m);
  if (m == 1) return Cyclo::from_rational(Rational(k), M);
  if (M % (4 * n) != 0)
    throw Error(Error::Kind::ConductorTooSmall,
                "need 4*" + std::to_string(n) + " | M, got M=" + std::to_string(M));
  Cyclo r = Cyclo::from_rational(Rational(k), M);
  long mm = m;
  for (long p = 2; p * p <= mm; ++p) {
    if (mm % p == 0) {
      r *= gauss_sqrt_prime(p, M);
      mm /= p;
    }
  }
  if (mm > 1) r *= gauss_sqrt_prime(mm, M);

  if (r * r != Cyclo::from_rational(Rational(n), M))
    throw Error(Error::Kind::BadInput, "internal: sqrt_int square check failed");
  double rad = 0.0;
  std::complex<double> v = r.embed(&rad);
  if (!(v.real() > rad && std::abs(v.imag()) <= rad + 1e-9 * std::abs(v.real())))
    throw Error(Error::Kind::BadInput, "internal: sqrt_int positivity check failed");
  return r;
}

}  // namespace redten
