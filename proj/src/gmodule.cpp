#include "redten/gmodule.hpp"

#include <algorithm>

namespace redten {

void validate_gmodule(const GModule& v) {
  const FiniteGroup& g = *v.group;
  if (int(v.rho.size()) != g.order())
    throw Error(Error::Kind::BadInput, "rho must be stored for all elements");
  for (const auto& m : v.rho)
    if (m.rows() != v.dim || m.cols() != v.dim)
      throw Error(Error::Kind::ShapeMismatch, "rho matrix of wrong shape");
  if (v.act(g.identity()) != id_mat<Cyclo>(v.dim))
    throw Error(Error::Kind::BadInput, "rho(e) != I");
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (v.act(g.mul(a, b)) != MatC(v.act(a) * v.act(b)))
        throw Error(Error::Kind::BadInput, "rho(" + std::to_string(a) + "*" + std::to_string(b) +
                                               ") != rho(a)rho(b)");
}

GModule tensor(const GModule& v, const GModule& w) {
  if (v.group != w.group) throw Error(Error::Kind::GroupMismatch, "tensor: different groups");
  GModule t;
  t.group = v.group;
  t.dim = v.dim * w.dim;
  t.rho.reserve(v.rho.size());
  for (size_t g = 0; g < v.rho.size(); ++g) t.rho.push_back(kron<Cyclo>(v.rho[g], w.rho[g]));
  return t;
}

GModule dual(const GModule& v) {
  GModule d;
  d.group = v.group;
  d.dim = v.dim;
  d.rho.resize(v.rho.size());
  for (int g = 0; g < v.group->order(); ++g)
    d.rho[size_t(g)] = v.act(v.group->inv(g)).transpose();
  return d;
}

GModule direct_sum(const GModule& v, const GModule& w) {
  if (v.group != w.group) throw Error(Error::Kind::GroupMismatch, "direct_sum: different groups");
  GModule s;
  s.group = v.group;
  s.dim = v.dim + w.dim;
  s.rho.reserve(v.rho.size());
  for (size_t g = 0; g < v.rho.size(); ++g)
    s.rho.push_back(direct_sum<Cyclo>(v.rho[g], w.rho[g]));
  return s;
}

GModule trivial_module(const FiniteGroup& g, long conductor) {
  GModule t;
  t.group = &g;
  t.dim = 1;
  MatC one = MatC::Constant(1, 1, Cyclo::from_rational(Rational(1), conductor));
  t.rho.assign(size_t(g.order()), one);
  return t;
}

namespace {
GModule perm_module(const FiniteGroup& g, long conductor, int (*image)(const FiniteGroup&, int, int)) {
  GModule m;
  m.group = &g;
  m.dim = g.order();
  Cyclo one = Cyclo::from_rational(Rational(1), conductor);
  m.rho.resize(size_t(g.order()));
  for (int x = 0; x < g.order(); ++x) {
    MatC p = MatC::Zero(g.order(), g.order());
    for (int h = 0; h < g.order(); ++h) p(image(g, x, h), h) = one;
    m.rho[size_t(x)] = std::move(p);
  }
  return m;
}
}  // namespace

GModule regular_module(const FiniteGroup& g, long conductor) {
  return perm_module(g, conductor, [](const FiniteGroup& gr, int x, int h) { return gr.mul(x, h); });
}

GModule function_module(const FiniteGroup& g, long conductor) {
  return perm_module(g, conductor, [](const FiniteGroup& gr, int x, int h) { return gr.mul(x, h); });
}

GModule conjugation_module(const FiniteGroup& g, long conductor) {
  return perm_module(g, conductor,
                     [](const FiniteGroup& gr, int x, int h) { return gr.conj(x, h); });
}

std::vector<MatC> intertwiner_space(const GModule& v, const GModule& w) {
  if (v.group != w.group)
    throw Error(Error::Kind::GroupMismatch, "intertwiner_space: different groups");
  const FiniteGroup& g = *v.group;
  std::vector<int> gens = g.generators();
  if (gens.empty()) gens.push_back(g.identity());
  int dv = v.dim, dw = w.dim;
  int unknowns = dv * dw;  // X : v -> w, X is dw x dv, flat index i*dv + j
  MatC cons = MatC::Zero(Eigen::Index(gens.size()) * dw * dv, unknowns);
  Eigen::Index row = 0;
  for (int ge : gens) {
    const MatC& rw = w.act(ge);
    const MatC& rv = v.act(ge);
    for (int i = 0; i < dw; ++i)
      for (int j = 0; j < dv; ++j) {
        // (rho_w(g) X - X rho_v(g))[i,j] = 0
        for (int k = 0; k < dw; ++k)
          if (!(rw(i, k) == Cyclo(0))) cons(row, k * dv + j) += rw(i, k);
        for (int l = 0; l < dv; ++l)
          if (!(rv(l, j) == Cyclo(0))) cons(row, i * dv + l) -= rv(l, j);
        ++row;
      }
  }
  MatC null = nullspace_basis<Cyclo>(cons);
  std::vector<MatC> basis;
  basis.reserve(size_t(null.cols()));
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    MatC x = MatC::Zero(dw, dv);
    for (int i = 0; i < dw; ++i)
      for (int j = 0; j < dv; ++j) x(i, j) = null(i * dv + j, c);
    basis.push_back(std::move(x));
  }
  return basis;
}

MatC invariant_vectors(const std::vector<const GModule*>& factors) {
  if (factors.empty()) throw Error(Error::Kind::BadInput, "invariant_vectors: empty list");
  const FiniteGroup& g = *factors[0]->group;
  GModule prod = *factors[0];
  for (size_t i = 1; i < factors.size(); ++i) prod = tensor(prod, *factors[i]);
  std::vector<int> gens = g.generators();
  if (gens.empty()) return id_mat<Cyclo>(prod.dim);
  MatC cons = MatC::Zero(Eigen::Index(gens.size()) * prod.dim, prod.dim);
  for (size_t k = 0; k < gens.size(); ++k)
    cons.middleRows(Eigen::Index(k) * prod.dim, prod.dim) =
        prod.act(gens[k]) - id_mat<Cyclo>(prod.dim);
  return nullspace_basis<Cyclo>(cons);
}

Cyclo nested_pairing(const std::vector<int>& dims, const VecC& phi, const VecC& psi) {
  // phi indexed by (j1..jn) with dims d1..dn, psi by (k1..kn) with dims
  // dn..d1; the nested evaluation contracts jm with k_{n+1-m}.
  int n = int(dims.size());
  long total = 1;
  for (int d : dims) total *= d;
  if (phi.size() != total || psi.size() != total)
    throw Error(Error::Kind::ShapeMismatch, "nested_pairing: dimension mismatch");
  Cyclo acc(0);
  std::vector<int> idx(size_t(n), 0);
  for (long flat = 0; flat < total; ++flat) {
    // decode flat (row-major over dims)
    long rem = flat;
    for (int m = n - 1; m >= 0; --m) {
      idx[size_t(m)] = int(rem % dims[size_t(m)]);
      rem /= dims[size_t(m)];
    }
    if (phi(flat) == Cyclo(0)) continue;
    // reversed flat over dims dn..d1 with indices jn..j1
    long rflat = 0;
    for (int m = n - 1; m >= 0; --m) rflat = rflat * dims[size_t(m)] + idx[size_t(m)];
    if (psi(rflat) == Cyclo(0)) continue;
    acc += phi(flat) * psi(rflat);
  }
  return acc;
}

DualBases invariants_and_dual_basis(const std::vector<const GModule*>& factors) {
  MatC basis = invariant_vectors(factors);
  std::vector<GModule> duals;
  duals.reserve(factors.size());
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) duals.push_back(dual(**it));
  std::vector<const GModule*> dual_ptrs;
  for (auto& d : duals) dual_ptrs.push_back(&d);
  MatC dual_inv = invariant_vectors(dual_ptrs);
  if (basis.cols() != dual_inv.cols())
    throw Error(Error::Kind::DegeneratePairing, "invariant spaces of different dimensions");
  std::vector<int> dims;
  for (auto* f : factors) dims.push_back(f->dim);
  Eigen::Index k = basis.cols();
  MatC pairing = MatC::Zero(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b)
      pairing(a, b) = nested_pairing(dims, basis.col(a), dual_inv.col(b));
  MatC coeff;
  try {
    coeff = invert<Cyclo>(pairing);
  } catch (const Error&) {
    throw Error(Error::Kind::DegeneratePairing, "nested evaluation pairing is singular");
  }
  DualBases out;
  out.basis = basis;
  out.dual_basis = dual_inv * coeff;  // column alpha: sum_b coeff(b,alpha) psi_b
  return out;
}

int IrrepZoo::max_dim() const {
  int m = 0;
  for (const auto& ir : irreps) m = std::max(m, ir.module.dim);
  return m;
}

ZooReport zoo_validate(const IrrepZoo& zoo) {
  ZooReport rep;
  auto fail = [&](const std::string& s) {
    rep.pass = false;
    rep.failures.push_back(s);
  };
  const FiniteGroup& g = *zoo.group;
  long sumsq = 0;
  for (const auto& ir : zoo.irreps) {
    try {
      validate_gmodule(ir.module);
    } catch (const Error& e) {
      fail("irrep " + ir.label + ": " + e.what());
    }
    sumsq += long(ir.module.dim) * ir.module.dim;
  }
  if (sumsq != g.order())
    fail("sum of dim^2 = " + std::to_string(sumsq) + " != |G| = " + std::to_string(g.order()));
  if (zoo.trivial_index < 0 || zoo.trivial_index >= int(zoo.irreps.size()) ||
      zoo.irreps[size_t(zoo.trivial_index)].module.dim != 1)
    fail("trivial label missing or not 1-dimensional");
  for (size_t i = 0; i < zoo.irreps.size(); ++i)
    for (size_t j = 0; j < zoo.irreps.size(); ++j) {
      size_t hom = intertwiner_space(zoo.irreps[i].module, zoo.irreps[j].module).size();
      size_t expect = (i == j) ? 1 : 0;
      if (hom != expect)
        fail("Hom(" + zoo.irreps[i].label + ", " + zoo.irreps[j].label + ") has dimension " +
             std::to_string(hom) + ", expected " + std::to_string(expect));
    }
  return rep;
}

long session_conductor(const FiniteGroup& g, const IrrepZoo& zoo) {
  long m = lcm_long(g.exponent(), 4L * g.order());
  m = lcm_long(m, 4L * std::max(1, zoo.max_dim()));
  return m;
}

GModule lift_module(const GModule& v, long conductor) {
  GModule out = v;
  for (auto& m : out.rho)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = m(i, j).lifted(conductor);
  return out;
}

IrrepZoo lift_zoo(const IrrepZoo& zoo, long conductor) {
  IrrepZoo out = zoo;
  for (auto& ir : out.irreps) ir.module = lift_module(ir.module, conductor);
  return out;
}

FourierBlocks fourier_blocks(const FiniteGroup& g, const IrrepZoo& zoo, long conductor) {
  FourierBlocks fb;
  int n = g.order();
  for (const auto& ir : zoo.irreps) {
    const GModule& x = ir.module;
    int d = x.dim;
    MatC proj = MatC::Zero(d * d, n);
    MatC inj = MatC::Zero(n, d * d);
    Rational scale(d, n);
    GModule xl = lift_module(x, conductor);
    for (int gg = 0; gg < n; ++gg) {
      const MatC& rg = xl.act(gg);
      const MatC& rginv = xl.act(g.inv(gg));
      for (int m = 0; m < d; ++m)
        for (int nn = 0; nn < d; ++nn) {
          proj(m * d + nn, gg) = rg(m, nn);
          inj(gg, m * d + nn) = Cyclo::from_rational(scale, conductor) * rginv(nn, m);
        }
    }
    fb.proj.push_back(std::move(proj));
    fb.inj.push_back(std::move(inj));
  }
  return fb;
}

}  // namespace redten
