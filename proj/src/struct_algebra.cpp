#include "redten/struct_algebra.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace redten {

SparseElem sparse_normalize(SparseElem v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseElem out;
  for (auto& e : v) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(e);
  }
  SparseElem res;
  for (auto& e : out)
    if (!e.second.is_zero()) res.push_back(e);
  return res;
}

SparseElem sparse_add(const SparseElem& a, const SparseElem& b) {
  SparseElem r = a;
  r.insert(r.end(), b.begin(), b.end());
  return sparse_normalize(std::move(r));
}

SparseElem sparse_scale(const SparseElem& a, const Rational& f) {
  if (f.is_zero()) return {};
  SparseElem r = a;
  for (auto& e : r) e.second *= f;
  return r;
}

bool sparse_eq(const SparseElem& a, const SparseElem& b) {
  return sparse_normalize(a) == sparse_normalize(b);
}

StructAlgebra::StructAlgebra(int dim, std::vector<std::string> labels, ProductFn product,
                             SparseElem unit, std::vector<SparseElem> generating_set)
    : dim_(dim), labels_(std::move(labels)), unit_(sparse_normalize(std::move(unit))),
      gens_(std::move(generating_set)) {
  if (labels_.empty()) {
    labels_.reserve(size_t(dim_));
    for (int i = 0; i < dim_; ++i) labels_.push_back("b" + std::to_string(i));
  }
  // probe products; use the flat monomial table when every basis product is a
  // scalar multiple of one basis element (all the doubles here are)
  monomial_ = true;
  std::vector<std::vector<SparseElem>> tmp{size_t(dim_)};
  for (int a = 0; a < dim_ && monomial_; ++a) {
    tmp[size_t(a)].resize(size_t(dim_));
    for (int b = 0; b < dim_; ++b) {
      SparseElem p = sparse_normalize(product(a, b));
      if (p.size() > 1) monomial_ = false;
      tmp[size_t(a)][size_t(b)] = std::move(p);
      if (!monomial_) break;
    }
  }
  if (monomial_) {
    mono_idx_.assign(size_t(dim_) * size_t(dim_), -1);
    mono_coeff_.assign(size_t(dim_) * size_t(dim_), Rational(0));
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b) {
        const SparseElem& p = tmp[size_t(a)][size_t(b)];
        if (!p.empty()) {
          mono_idx_[size_t(a) * size_t(dim_) + size_t(b)] = p[0].first;
          mono_coeff_[size_t(a) * size_t(dim_) + size_t(b)] = p[0].second;
        }
      }
  } else {
    generic_.assign(size_t(dim_), {});
    for (int a = 0; a < dim_; ++a) {
      generic_[size_t(a)].resize(size_t(dim_));
      for (int b = 0; b < dim_; ++b) generic_[size_t(a)][size_t(b)] = sparse_normalize(product(a, b));
    }
  }
  if (gens_.empty()) {
    for (int i = 0; i < dim_; ++i) gens_.push_back(SparseElem{{i, Rational(1)}});
  }
  validate();
}

SparseElem StructAlgebra::basis_product(int a, int b) const {
  if (monomial_) {
    int c = mono_idx_[size_t(a) * size_t(dim_) + size_t(b)];
    if (c < 0) return {};
    return SparseElem{{c, mono_coeff_[size_t(a) * size_t(dim_) + size_t(b)]}};
  }
  return generic_[size_t(a)][size_t(b)];
}

SparseElem StructAlgebra::multiply(const SparseElem& x, const SparseElem& y) const {
  SparseElem acc;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      Rational f = ca * cb;
      if (monomial_) {
        int c = mono_idx_[size_t(a) * size_t(dim_) + size_t(b)];
        if (c >= 0) acc.emplace_back(c, f * mono_coeff_[size_t(a) * size_t(dim_) + size_t(b)]);
      } else {
        for (const auto& [c, cc] : generic_[size_t(a)][size_t(b)]) acc.emplace_back(c, f * cc);
      }
    }
  return sparse_normalize(std::move(acc));
}

void StructAlgebra::validate() {
  // unit acts as a two-sided identity
  for (int a = 0; a < dim_; ++a) {
    SparseElem ea{{a, Rational(1)}};
    if (!sparse_eq(multiply(unit_, ea), ea) || !sparse_eq(multiply(ea, unit_), ea))
      throw Error(Error::Kind::BadInput, "unit fails on basis element " + std::to_string(a));
  }
  auto check_triple = [&](int a, int b, int c) {
    SparseElem ea{{a, Rational(1)}}, eb{{b, Rational(1)}}, ec{{c, Rational(1)}};
    if (!sparse_eq(multiply(multiply(ea, eb), ec), multiply(ea, multiply(eb, ec))))
      throw Error(Error::Kind::NotAssociative,
                  "associativity fails at basis triple (" + std::to_string(a) + "," +
                      std::to_string(b) + "," + std::to_string(c) + ")");
  };
  if (dim_ <= 1500 && long(dim_) * dim_ * dim_ <= 200'000'000L) {
    assoc_mode_ = AssocCheck::Exhaustive;
    if (monomial_) {
      // flat sweep without temporaries; with 0/1 coefficients only the
      // indices need comparing
      bool unit_coeffs = true;
      for (size_t p = 0; p < mono_idx_.size() && unit_coeffs; ++p)
        if (mono_idx_[p] >= 0 && mono_coeff_[p] != Rational(1)) unit_coeffs = false;
      size_t d = size_t(dim_);
      for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b < d; ++b) {
          int ab = mono_idx_[a * d + b];
          const int* row_a = mono_idx_.data() + a * d;
          const int* row_ab = ab < 0 ? nullptr : mono_idx_.data() + size_t(ab) * d;
          for (size_t c = 0; c < d; ++c) {
            int bc = mono_idx_[b * d + c];
            int lhs = row_ab ? row_ab[c] : -1;
            int rhs = bc < 0 ? -1 : row_a[size_t(bc)];
            if (lhs != rhs)
              throw Error(Error::Kind::NotAssociative,
                          "associativity fails at basis triple (" + std::to_string(a) + "," +
                              std::to_string(b) + "," + std::to_string(c) + ")");
            if (lhs >= 0 && !unit_coeffs) check_triple(int(a), int(b), int(c));
          }
        }
    } else {
      for (int a = 0; a < dim_; ++a)
        for (int b = 0; b < dim_; ++b)
          for (int c = 0; c < dim_; ++c) check_triple(a, b, c);
    }
  } else {
    assoc_mode_ = AssocCheck::Sampled;
    std::mt19937_64 rng(0xa11e5ULL);
    std::uniform_int_distribution<int> d(0, dim_ - 1);
    for (long t = 0; t < 10L * long(dim_) * 10L; ++t) check_triple(d(rng), d(rng), d(rng));
  }
}

SparseElem tensor_square_product(const StructAlgebra& alg, const SparseElem& x,
                                 const SparseElem& y) {
  long d = alg.dim();
  SparseElem acc;
  for (const auto& [p, cp] : x) {
    int a1 = int(p / d), b1 = int(p % d);
    for (const auto& [q, cq] : y) {
      int a2 = int(q / d), b2 = int(q % d);
      SparseElem left = alg.basis_product(a1, a2);
      if (left.empty()) continue;
      SparseElem right = alg.basis_product(b1, b2);
      if (right.empty()) continue;
      Rational f = cp * cq;
      for (const auto& [la, ca] : left)
        for (const auto& [rb, cb] : right)
          acc.emplace_back(int(long(la) * d + rb), f * ca * cb);
    }
  }
  return sparse_normalize(std::move(acc));
}

SparseElem AlgebraMap::apply(const SparseElem& x) const {
  SparseElem acc;
  for (const auto& [i, c] : x)
    for (const auto& [j, cj] : images[size_t(i)]) acc.emplace_back(j, c * cj);
  return sparse_normalize(std::move(acc));
}

bool AlgebraMap::is_multiplicative() const {
  for (int a = 0; a < source->dim(); ++a)
    for (int b = 0; b < source->dim(); ++b) {
      SparseElem lhs = apply(source->basis_product(a, b));
      SparseElem rhs = into_tensor_square
                           ? tensor_square_product(*target, images[size_t(a)], images[size_t(b)])
                           : target->multiply(images[size_t(a)], images[size_t(b)]);
      if (!sparse_eq(lhs, rhs)) return false;
    }
  return true;
}

bool AlgebraMap::is_unital() const {
  SparseElem img = apply(source->unit());
  if (into_tensor_square) {
    long d = target->dim();
    SparseElem tunit;
    for (const auto& [a, ca] : target->unit())
      for (const auto& [b, cb] : target->unit()) tunit.emplace_back(int(long(a) * d + b), ca * cb);
    return sparse_eq(img, tunit);
  }
  return sparse_eq(img, target->unit());
}

bool AlgebraMap::is_isomorphism() const {
  if (into_tensor_square || source->dim() != target->dim()) return false;
  Mat<Rational> m = Mat<Rational>::Zero(target->dim(), source->dim());
  for (int i = 0; i < source->dim(); ++i)
    for (const auto& [j, c] : images[size_t(i)]) m(j, i) = c;
  return rank_of<Rational>(m) == source->dim() && is_multiplicative();
}

namespace {
int commutant_dimension(const StructAlgebra& a, const std::vector<SparseElem>& gens) {
  SparseEchelon<Rational> ech(a.dim());
  for (const auto& g : gens) {
    // rows of [x, g] = 0 grouped by output basis index
    std::map<int, SparseEchelon<Rational>::Row> rows;
    for (int b = 0; b < a.dim(); ++b) {
      SparseElem eb{{b, Rational(1)}};
      SparseElem comm = sparse_add(a.multiply(eb, g), sparse_scale(a.multiply(g, eb), Rational(-1)));
      for (const auto& [c, coef] : comm) rows[c].emplace_back(b, coef);
    }
    for (auto& [c, row] : rows) ech.insert(std::move(row));
  }
  return ech.nullity();
}
}  // namespace

int center_dimension(const StructAlgebra& a) { return commutant_dimension(a, a.generating_set()); }

int center_dimension_full_basis(const StructAlgebra& a) {
  std::vector<SparseElem> gens;
  for (int i = 0; i < a.dim(); ++i) gens.push_back(SparseElem{{i, Rational(1)}});
  return commutant_dimension(a, gens);
}

StructAlgebra group_algebra(const FiniteGroup& g) {
  std::vector<std::string> labels;
  for (int i = 0; i < g.order(); ++i) labels.push_back("g" + std::to_string(i));
  return StructAlgebra(
      g.order(), std::move(labels),
      [&g](int a, int b) { return SparseElem{{g.mul(a, b), Rational(1)}}; },
      SparseElem{{g.identity(), Rational(1)}});
}

StructAlgebra drinfeld_double(const FiniteGroup& g) {
  int n = g.order();
  std::vector<std::string> labels;
  labels.reserve(size_t(n) * size_t(n));
  for (int a = 0; a < n; ++a)
    for (int h = 0; h < n; ++h)
      labels.push_back("g" + std::to_string(a) + "*d" + std::to_string(h));
  auto product = [&g, n](int x, int y) -> SparseElem {
    int g1 = x / n, h1 = x % n;
    int g2 = y / n, h2 = y % n;
    // (g1 (x) d_{h1}) (g2 (x) d_{h2}) = g1 g2 (x) d_{g2^-1 h1 g2} d_{h2}
    if (g.conj(g.inv(g2), h1) != h2) return {};
    return SparseElem{{g.mul(g1, g2) * n + h2, Rational(1)}};
  };
  SparseElem unit;
  for (int h = 0; h < n; ++h) unit.emplace_back(g.identity() * n + h, Rational(1));
  std::vector<SparseElem> gens;
  for (int gg : g.generators()) {
    SparseElem s;
    for (int h = 0; h < n; ++h) s.emplace_back(gg * n + h, Rational(1));
    gens.push_back(sparse_normalize(std::move(s)));
  }
  for (int h = 0; h < n; ++h)
    gens.push_back(SparseElem{{g.identity() * n + h, Rational(1)}});
  return StructAlgebra(n * n, std::move(labels), product, std::move(unit), std::move(gens));
}

SparseElem r_matrix(const FiniteGroup& g) {
  int n = g.order();
  long d = long(n) * n;
  SparseElem r;
  for (int x = 0; x < n; ++x) {
    // first leg g (x) delta_*, second leg e (x) delta_g
    for (int h = 0; h < n; ++h) {
      long first = long(x) * n + h;
      long second = long(g.identity()) * n + x;
      r.emplace_back(int(first * d + second), Rational(1));
    }
  }
  return sparse_normalize(std::move(r));
}

namespace {
// image of e (x) delta_h under bar-Delta as a pair element
SparseElem delta_pair(const FiniteGroup& g, int h) {
  int n = g.order();
  long d = long(n) * n;
  long i = long(g.identity()) * n + h;
  return SparseElem{{int(i * d + i), Rational(1)}};
}
}  // namespace

AlgebraMap coproduct_bar(const FiniteGroup& g, const StructAlgebra& dg) {
  int n = g.order();
  long d = long(n) * n;
  AlgebraMap m;
  m.source = &dg;
  m.target = &dg;
  m.into_tensor_square = true;
  m.images.resize(size_t(dg.dim()));
  for (int gg = 0; gg < n; ++gg)
    for (int h = 0; h < n; ++h) {
      // g (x) delta_h = (g (x) delta_*) (e (x) delta_h); bar-Delta(g (x)
      // delta_h) = (g gg-pair) * (delta_h-pair); computed directly:
      // bar-Delta(g) = g(x)g with g = sum_h g(x)delta_h
      SparseElem gpair;
      for (int h1 = 0; h1 < n; ++h1)
        for (int h2 = 0; h2 < n; ++h2)
          gpair.emplace_back(int((long(gg) * n + h1) * d + (long(gg) * n + h2)), Rational(1));
      SparseElem img = tensor_square_product(dg, sparse_normalize(std::move(gpair)), delta_pair(g, h));
      m.images[size_t(gg) * size_t(n) + size_t(h)] = img;
    }
  return m;
}

SparseElem parity_idempotent(const FiniteGroup& g, const StructAlgebra& dg, int sigma) {
  if (!g.has_z()) throw Error(Error::Kind::ZMissing, "group has no z");
  int n = g.order();
  (void)dg;
  SparseElem s;
  Rational half(1, 2);
  for (int h = 0; h < n; ++h) {
    s.emplace_back(g.identity() * n + h, half);
    s.emplace_back(*g.z() * n + h, (sigma % 2 == 0) ? half : -half);
  }
  return sparse_normalize(std::move(s));
}

SparseElem delta_parity_left(const FiniteGroup& g, const StructAlgebra& dg, int elem, int sigma) {
  SparseElem dh{{g.identity() * g.order() + elem, Rational(1)}};
  return dg.multiply(parity_idempotent(g, dg, sigma), dh);
}

SparseElem delta_parity_fnside(const FiniteGroup& g, const StructAlgebra& dg, int elem, int sigma) {
  if (!g.has_z()) throw Error(Error::Kind::ZMissing, "group has no z");
  (void)dg;
  int n = g.order();
  int gz = g.mul(elem, *g.z());
  Rational half(1, 2);
  SparseElem s{{g.identity() * n + elem, half},
               {g.identity() * n + gz, (sigma % 2 == 0) ? half : -half}};
  return sparse_normalize(std::move(s));
}

AlgebraMap coproduct_bar_z(const FiniteGroup& g, const StructAlgebra& dg) {
  if (!g.has_z()) throw Error(Error::Kind::ZMissing, "coproduct_bar_z needs z");
  int n = g.order();
  long d = long(n) * n;
  int z = *g.z();
  AlgebraMap m;
  m.source = &dg;
  m.target = &dg;
  m.into_tensor_square = true;
  m.images.resize(size_t(dg.dim()));
  // images of e (x) delta_h: sum_{sigma,tau} d^sigma_{h z^tau} (x) d^tau_{h z^sigma}
  std::vector<SparseElem> delta_img{size_t(n)};
  for (int h = 0; h < n; ++h) {
    SparseElem acc;
    for (int sigma = 0; sigma < 2; ++sigma)
      for (int tau = 0; tau < 2; ++tau) {
        int hzt = (tau == 0) ? h : g.mul(h, z);
        int hzs = (sigma == 0) ? h : g.mul(h, z);
        SparseElem left = delta_parity_left(g, dg, hzt, sigma);
        SparseElem right = delta_parity_left(g, dg, hzs, tau);
        for (const auto& [a, ca] : left)
          for (const auto& [b, cb] : right) acc.emplace_back(int(long(a) * d + b), ca * cb);
      }
    delta_img[size_t(h)] = sparse_normalize(std::move(acc));
  }
  for (int gg = 0; gg < n; ++gg) {
    SparseElem gpair;
    for (int h1 = 0; h1 < n; ++h1)
      for (int h2 = 0; h2 < n; ++h2)
        gpair.emplace_back(int((long(gg) * n + h1) * d + (long(gg) * n + h2)), Rational(1));
    gpair = sparse_normalize(std::move(gpair));
    for (int h = 0; h < n; ++h)
      m.images[size_t(gg) * size_t(n) + size_t(h)] =
          tensor_square_product(dg, gpair, delta_img[size_t(h)]);
  }
  return m;
}

AlgebraMap lambda_automorphism(const FiniteGroup& g, const StructAlgebra& dg) {
  if (!g.has_z()) throw Error(Error::Kind::ZMissing, "lambda_automorphism needs z");
  int n = g.order();
  int z = *g.z();
  AlgebraMap m;
  m.source = &dg;
  m.target = &dg;
  m.images.resize(size_t(dg.dim()));
  std::vector<SparseElem> delta_img{size_t(n)};
  for (int h = 0; h < n; ++h)
    delta_img[size_t(h)] =
        sparse_add(delta_parity_left(g, dg, h, 0), delta_parity_left(g, dg, g.mul(h, z), 1));
  for (int gg = 0; gg < n; ++gg) {
    SparseElem gfull;
    for (int h = 0; h < n; ++h) gfull.emplace_back(gg * n + h, Rational(1));
    gfull = sparse_normalize(std::move(gfull));
    for (int h = 0; h < n; ++h)
      m.images[size_t(gg) * size_t(n) + size_t(h)] = dg.multiply(gfull, delta_img[size_t(h)]);
  }
  return m;
}

StructAlgebra elliptic_double(const FiniteGroup& g) {
  int n = g.order();
  long d = long(n) * n * n;
  std::vector<std::string> labels;
  labels.reserve(size_t(d));
  for (int a = 0; a < n; ++a)
    for (int h1 = 0; h1 < n; ++h1)
      for (int h2 = 0; h2 < n; ++h2)
        labels.push_back("g" + std::to_string(a) + "*d" + std::to_string(h1) + "*d" +
                         std::to_string(h2));
  // smash-product convention matching D(G):
  // g d_{(h1,h2)} . g' d_{(k1,k2)} = g g' (x) d_{g'^-1 h1 g'} d_{k1} (x) d_{g'^-1 h2 g'} d_{k2}
  auto product = [&g, n](int x, int y) -> SparseElem {
    int g1 = x / (n * n), h1 = (x / n) % n, h2 = x % n;
    int g2 = y / (n * n), k1 = (y / n) % n, k2 = y % n;
    if (k1 != g.conj(g.inv(g2), h1) || k2 != g.conj(g.inv(g2), h2)) return {};
    return SparseElem{{(g.mul(g1, g2) * n + k1) * n + k2, Rational(1)}};
  };
  SparseElem unit;
  for (int h1 = 0; h1 < n; ++h1)
    for (int h2 = 0; h2 < n; ++h2) unit.emplace_back((g.identity() * n + h1) * n + h2, Rational(1));
  std::vector<SparseElem> gens;
  for (int gg : g.generators()) {
    SparseElem s;
    for (int h1 = 0; h1 < n; ++h1)
      for (int h2 = 0; h2 < n; ++h2) s.emplace_back((gg * n + h1) * n + h2, Rational(1));
    gens.push_back(sparse_normalize(std::move(s)));
  }
  for (int h1 = 0; h1 < n; ++h1)
    for (int h2 = 0; h2 < n; ++h2)
      gens.push_back(SparseElem{{(g.identity() * n + h1) * n + h2, Rational(1)}});
  return StructAlgebra(int(d), std::move(labels), product, std::move(unit), std::move(gens));
}

TorusAlgebra torus_subalgebra(const FiniteGroup& g) {
  CommutingPairs cp = g.commuting_pairs();
  int no = int(cp.pairs.size());
  std::vector<std::string> labels;
  for (int a = 0; a < g.order(); ++a)
    for (const auto& [h1, h2] : cp.pairs)
      labels.push_back("g" + std::to_string(a) + "*d(" + std::to_string(h1) + "," +
                       std::to_string(h2) + ")");
  auto product = [&g, cp, no](int x, int y) -> SparseElem {
    int g1 = x / no;
    auto [h1, h2] = cp.pairs[size_t(x % no)];
    int g2 = y / no;
    auto [k1, k2] = cp.pairs[size_t(y % no)];
    if (k1 != g.conj(g.inv(g2), h1) || k2 != g.conj(g.inv(g2), h2)) return {};
    return SparseElem{{g.mul(g1, g2) * no + (y % no), Rational(1)}};
  };
  SparseElem unit;
  for (int p = 0; p < no; ++p) unit.emplace_back(g.identity() * no + p, Rational(1));
  std::vector<SparseElem> gens;
  for (int gg : g.generators()) {
    SparseElem s;
    for (int p = 0; p < no; ++p) s.emplace_back(gg * no + p, Rational(1));
    gens.push_back(sparse_normalize(std::move(s)));
  }
  for (int p = 0; p < no; ++p) gens.push_back(SparseElem{{g.identity() * no + p, Rational(1)}});
  TorusAlgebra t{StructAlgebra(g.order() * no, std::move(labels), product, std::move(unit),
                               std::move(gens)),
                 cp.pairs};
  return t;
}

TorusCheck torus_center_check(const FiniteGroup& g) {
  TorusCheck out;
  TorusAlgebra torus = torus_subalgebra(g);
  out.lhs = center_dimension(torus.algebra);
  for (const auto& cls : g.conjugacy_classes()) {
    Subgroup zg = subgroup_from_elements(g, g.centralizer(cls.representative));
    StructAlgebra dz = drinfeld_double(zg.group);
    out.rhs_classes += center_dimension(dz);
  }
  for (const auto& orb : g.diagonal_orbits(g.commuting_pairs().pairs)) {
    Subgroup stab = subgroup_from_elements(g, orb.stabilizer);
    out.rhs_orbits += int(stab.group.conjugacy_classes().size());
  }
  out.equal = (out.lhs == out.rhs_classes) && (out.lhs == out.rhs_orbits);
  return out;
}

}  // namespace redten
