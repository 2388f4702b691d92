#include "redten/oracle.hpp"

#include <algorithm>

namespace redten {

namespace {

MatC factor_action(const OracleFactor& f, const FiniteGroup& g, int elt) {
  switch (f.kind) {
    case OracleFactor::Kind::KG:
    case OracleFactor::Kind::FG: {
      MatC m = zero_mat<Cyclo>(g.order(), g.order());
      for (int h = 0; h < g.order(); ++h) m(g.mul(elt, h), h) = Cyclo(1);
      return m;
    }
    case OracleFactor::Kind::Bundle:
    case OracleFactor::Kind::DualBundle:
      return f.bundle->act[size_t(elt)];
    case OracleFactor::Kind::Module:
      return f.module->act(elt);
    case OracleFactor::Kind::DualModule:
      return f.module->act(f.module->group->inv(elt)).transpose();
  }
  throw Error(Error::Kind::ShapeMismatch, "bad factor kind");
}

// The evaluator: factors plus the accumulated matrix from the input space.
struct Ev {
  const FiniteGroup& g;
  std::vector<OracleFactor> fs;
  MatC acc;
  int step_index = 0;

  explicit Ev(const FiniteGroup& gg, std::vector<OracleFactor> inputs) : g(gg), fs(std::move(inputs)) {
    int t = total();
    acc = id_mat<Cyclo>(t);
  }

  int total() const {
    int t = 1;
    for (const auto& f : fs) t *= f.dim;
    return t;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Error::Kind::ShapeMismatch,
                "step " + std::to_string(step_index) + ": " + what);
  }

  void expect_pos(int pos, int span) const {
    if (pos < 0 || pos + span > int(fs.size())) fail("position out of range");
  }

  // Applies `local` (block_out x block_in) to the contiguous factors
  // [pos, pos+span), replacing them by `repl`.
  void apply_local(int pos, int span, const MatC& local, std::vector<OracleFactor> repl) {
    expect_pos(pos, span);
    long pre = 1, block_in = 1, post = 1;
    for (int i = 0; i < pos; ++i) pre *= fs[size_t(i)].dim;
    for (int i = pos; i < pos + span; ++i) block_in *= fs[size_t(i)].dim;
    for (int i = pos + span; i < int(fs.size()); ++i) post *= fs[size_t(i)].dim;
    long block_out = 1;
    for (const auto& f : repl) block_out *= f.dim;
    if (local.rows() != block_out || local.cols() != block_in) fail("local matrix shape");
    MatC next = zero_mat<Cyclo>(pre * block_out * post, acc.cols());
    for (long c = 0; c < block_in; ++c)
      for (long r = 0; r < block_out; ++r) {
        const Cyclo& lv = local(r, c);
        if (lv == Cyclo(0)) continue;
        for (long p = 0; p < pre; ++p)
          for (long s = 0; s < post; ++s) {
            long row_old = (p * block_in + c) * post + s;
            long row_new = (p * block_out + r) * post + s;
            for (Eigen::Index col = 0; col < acc.cols(); ++col) {
              const Cyclo& av = acc(row_old, col);
              if (av == Cyclo(0)) continue;
              next(row_new, col) += lv * av;
            }
          }
      }
    acc = std::move(next);
    fs.erase(fs.begin() + pos, fs.begin() + pos + span);
    fs.insert(fs.begin() + pos, repl.begin(), repl.end());
  }

  void scalar(const Cyclo& c) { acc = c * acc; }

  void swap_step(int pos, bool koszul) {
    expect_pos(pos, 2);
    const OracleFactor a = fs[size_t(pos)];
    const OracleFactor b = fs[size_t(pos + 1)];
    MatC sign = id_mat<Cyclo>(long(a.dim) * b.dim);
    if (koszul) {
      if (!g.has_z()) fail("Koszul swap needs z");
      int z = *g.z();
      MatC pa = Cyclo(Rational(1, 2)) * (id_mat<Cyclo>(a.dim) - factor_action(a, g, z));
      MatC pb = Cyclo(Rational(1, 2)) * (id_mat<Cyclo>(b.dim) - factor_action(b, g, z));
      sign -= Cyclo(2) * kron<Cyclo>(pa, pb);
    }
    MatC perm = zero_mat<Cyclo>(long(a.dim) * b.dim, long(a.dim) * b.dim);
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < b.dim; ++j) perm(j * a.dim + i, i * b.dim + j) = Cyclo(1);
    apply_local(pos, 2, spmul<Cyclo>(perm, sign), {b, a});
  }

  void insert_coev_kg(int pos) {
    int n = g.order();
    MatC vec = zero_mat<Cyclo>(long(n) * n, 1);
    for (int x = 0; x < n; ++x) vec(long(x) * n + x, 0) = Cyclo(1);
    apply_local(pos, 0, vec, {OracleFactor::kg(n), OracleFactor::fg(n)});
  }

  void ev_kg(int pos) {
    expect_pos(pos, 2);
    if (fs[size_t(pos)].kind != OracleFactor::Kind::KG ||
        fs[size_t(pos + 1)].kind != OracleFactor::Kind::FG)
      fail("EvKG expects (KG, FG)");
    int n = g.order();
    MatC row = zero_mat<Cyclo>(1, long(n) * n);
    for (int x = 0; x < n; ++x) row(0, long(x) * n + x) = Cyclo(1);
    apply_local(pos, 2, row, {});
  }

  void insert_elem_kg(int pos, int elem) {
    int n = g.order();
    MatC vec = zero_mat<Cyclo>(n, 1);
    vec(elem, 0) = Cyclo(1);
    apply_local(pos, 0, vec, {OracleFactor::kg(n)});
  }

  void delta_functional(int pos, int elem) {
    expect_pos(pos, 1);
    if (fs[size_t(pos)].kind != OracleFactor::Kind::KG) fail("DeltaFunctional expects KG");
    int n = g.order();
    MatC row = zero_mat<Cyclo>(1, n);
    row(0, elem) = Cyclo(1);
    apply_local(pos, 1, row, {});
  }

  void mul_kg(int pos) {
    expect_pos(pos, 2);
    if (fs[size_t(pos)].kind != OracleFactor::Kind::KG ||
        fs[size_t(pos + 1)].kind != OracleFactor::Kind::KG)
      fail("MulKG expects (KG, KG)");
    int n = g.order();
    MatC m = zero_mat<Cyclo>(n, long(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) m(g.mul(a, b), long(a) * n + b) = Cyclo(1);
    apply_local(pos, 2, m, {OracleFactor::kg(n)});
  }

  void half_braid(int pos, bool inverse) {
    expect_pos(pos, 2);
    if (!inverse) {
      const OracleFactor a = fs[size_t(pos)];
      const OracleFactor v = fs[size_t(pos + 1)];
      if (v.kind != OracleFactor::Kind::Bundle && v.kind != OracleFactor::Kind::DualBundle)
        fail("HalfBraid expects a bundle in the second slot");
      const EquivariantBundle& bv = *v.bundle;
      MatC m = zero_mat<Cyclo>(long(v.dim) * a.dim, long(a.dim) * v.dim);
      for (int vi = 0; vi < v.dim; ++vi) {
        int grade = bv.fiber_of(vi);
        MatC ra = factor_action(a, g, grade);
        for (int ak = 0; ak < a.dim; ++ak)
          for (int aj = 0; aj < a.dim; ++aj) {
            if (ra(ak, aj) == Cyclo(0)) continue;
            m(long(vi) * a.dim + ak, long(aj) * v.dim + vi) = ra(ak, aj);
          }
      }
      apply_local(pos, 2, m, {v, a});
    } else {
      const OracleFactor v = fs[size_t(pos)];
      const OracleFactor a = fs[size_t(pos + 1)];
      if (v.kind != OracleFactor::Kind::Bundle && v.kind != OracleFactor::Kind::DualBundle)
        fail("HalfBraidInv expects a bundle in the first slot");
      const EquivariantBundle& bv = *v.bundle;
      MatC m = zero_mat<Cyclo>(long(a.dim) * v.dim, long(v.dim) * a.dim);
      for (int vl = 0; vl < v.dim; ++vl) {
        int grade = g.inv(bv.fiber_of(vl));
        MatC ra = factor_action(a, g, grade);
        for (int ak = 0; ak < a.dim; ++ak)
          for (int aj = 0; aj < a.dim; ++aj) {
            if (ra(ak, aj) == Cyclo(0)) continue;
            m(long(ak) * v.dim + vl, long(vl) * a.dim + aj) = ra(ak, aj);
          }
      }
      apply_local(pos, 2, m, {a, v});
    }
  }

  void insert_coev_pair(int pos, const Step& st) {
    std::vector<OracleFactor> pair;
    int d = 0;
    if (st.module) {
      d = st.module->dim;
      pair = {OracleFactor::of_module(*st.module), OracleFactor::dual_of_module(*st.module)};
    } else if (st.bundle_a && st.bundle_b) {
      if (st.bundle_a->total != st.bundle_b->total) fail("coev pair bundles of different size");
      d = st.bundle_a->total;
      pair = {OracleFactor::of_bundle(*st.bundle_a), OracleFactor::of_bundle(*st.bundle_b)};
    } else {
      fail("InsertCoevPair needs a module or a bundle pair");
    }
    MatC vec = zero_mat<Cyclo>(long(d) * d, 1);
    for (int m = 0; m < d; ++m) vec(long(m) * d + m, 0) = Cyclo(1);
    apply_local(pos, 0, vec, pair);
  }

  void contract_pair(int pos) {
    expect_pos(pos, 2);
    int da = fs[size_t(pos)].dim, db = fs[size_t(pos + 1)].dim;
    if (da != db) fail("ContractPair dims differ");
    MatC row = zero_mat<Cyclo>(1, long(da) * db);
    for (int m = 0; m < da; ++m) row(0, long(m) * db + m) = Cyclo(1);
    apply_local(pos, 2, row, {});
  }

  void module_action(int pos, const SparseElem& x, const StructAlgebra* dg) {
    expect_pos(pos, 1);
    const OracleFactor& f = fs[size_t(pos)];
    if (f.kind != OracleFactor::Kind::Bundle) fail("ModuleAction expects a bundle");
    if (!dg) fail("ModuleAction needs the double algebra");
    apply_local(pos, 1, f.bundle->action_of(x, *dg), {f});
  }
};

}  // namespace

Evaluation evaluate(const Composite& c, const StructAlgebra* dg) {
  Ev ev(*c.group, c.inputs);
  for (const auto& st : c.steps) {
    switch (st.kind) {
      case Step::Kind::Scalar:
        ev.scalar(st.scalar);
        break;
      case Step::Kind::Swap:
        ev.swap_step(st.pos, false);
        break;
      case Step::Kind::SuperSwap:
        ev.swap_step(st.pos, true);
        break;
      case Step::Kind::InsertCoevKG:
        ev.insert_coev_kg(st.pos);
        break;
      case Step::Kind::EvKG:
        ev.ev_kg(st.pos);
        break;
      case Step::Kind::InsertElemKG:
        ev.insert_elem_kg(st.pos, st.elem);
        break;
      case Step::Kind::DeltaFunctional:
        ev.delta_functional(st.pos, st.elem);
        break;
      case Step::Kind::MulKG:
        ev.mul_kg(st.pos);
        break;
      case Step::Kind::HalfBraid:
        ev.half_braid(st.pos, false);
        break;
      case Step::Kind::HalfBraidInv:
        ev.half_braid(st.pos, true);
        break;
      case Step::Kind::InsertCoevPair:
        ev.insert_coev_pair(st.pos, st);
        break;
      case Step::Kind::ContractPair:
        ev.contract_pair(st.pos);
        break;
      case Step::Kind::ModuleAction:
        ev.module_action(st.pos, st.algebra_elem, dg);
        break;
      case Step::Kind::RegularInsert:
        ev.fail("RegularInsert is a pipeline-level construct");
    }
    ++ev.step_index;
  }
  return Evaluation{std::move(ev.acc), std::move(ev.fs)};
}

namespace {

MatC q_pipeline(const EquivariantBundle& v, const EquivariantBundle& w, bool super) {
  const FiniteGroup& g = *v.group;
  Composite c;
  c.group = &g;
  c.inputs = {OracleFactor::of_bundle(v), OracleFactor::of_bundle(w)};
  Step::Kind sw = super ? Step::Kind::SuperSwap : Step::Kind::Swap;
  c.steps.push_back({Step::Kind::InsertCoevKG, 0});
  c.steps.push_back({sw, 1});
  c.steps.push_back({Step::Kind::HalfBraid, 0});
  c.steps.push_back({Step::Kind::HalfBraid, 2});
  c.steps.push_back({sw, 1});
  c.steps.push_back({Step::Kind::EvKG, 2});
  Step sc{Step::Kind::Scalar, 0};
  sc.scalar = Cyclo(Rational(1, g.order()));
  c.steps.push_back(sc);
  return evaluate(c).matrix;
}

}  // namespace

MatC q_projector(const EquivariantBundle& v, const EquivariantBundle& w) {
  return q_pipeline(v, w, false);
}

MatC q_projector_super(const EquivariantBundle& v, const EquivariantBundle& w) {
  if (!v.group->has_z()) throw Error(Error::Kind::ZMissing, "q_projector_super needs z");
  return q_pipeline(v, w, true);
}

QReport q_projector_check(const EquivariantBundle& v, const EquivariantBundle& w, bool super) {
  const FiniteGroup& g = *v.group;
  QReport rep;
  MatC q = super ? q_projector_super(v, w) : q_projector(v, w);
  rep.idempotent = (spmul<Cyclo>(q, q) == q);

  rep.equivariant = true;
  for (int ge : g.generators()) {
    MatC diag = kron<Cyclo>(v.act[size_t(ge)], w.act[size_t(ge)]);
    if (spmul<Cyclo>(q, diag) != spmul<Cyclo>(diag, q)) rep.equivariant = false;
  }
  // Q also commutes with the convolution grading projectors
  for (int b = 0; b < g.order(); ++b) {
    MatC proj = zero_mat<Cyclo>(v.total * w.total, v.total * w.total);
    for (int iv = 0; iv < v.total; ++iv)
      for (int iw = 0; iw < w.total; ++iw) {
        if (g.mul(v.fiber_of(iv), w.fiber_of(iw)) != b) continue;
        proj(iv * w.total + iw, iv * w.total + iw) = Cyclo(1);
      }
    if (spmul<Cyclo>(q, proj) != spmul<Cyclo>(proj, q)) rep.equivariant = false;
  }

  // image graded dims under the coproduct grading match the fiberwise product
  StructAlgebra dg = drinfeld_double(g);
  AlgebraMap cop = super ? coproduct_bar_z(g, dg) : coproduct_bar(g, dg);
  MatC image = column_space_basis<Cyclo>(q);
  std::vector<int> dims = super ? reduced_tensor_z(v, w).bundle.fiber_dim
                                : reduced_tensor(v, w).bundle.fiber_dim;
  rep.graded_dims_match = true;
  int total = 0;
  for (int b = 0; b < g.order(); ++b) {
    SparseElem db{{g.identity() * g.order() + b, Rational(1)}};
    MatC pb = pair_action(v, w, cop.apply(db), dg);
    int rk = int(rank_of<Cyclo>(MatC(spmul<Cyclo>(pb, image))));
    if (rk != dims[size_t(b)]) rep.graded_dims_match = false;
    total += rk;
  }
  if (total != int(image.cols())) rep.graded_dims_match = false;
  return rep;
}

namespace {

struct PivotalSession {
  const FiniteGroup* g = nullptr;
  long conductor = 1;
  IrrepZoo lifted;
  FourierBlocks fourier;
  std::vector<Cyclo> sqrt_d;
  Cyclo sqrt_big_d;
  Step::Kind swap_kind = Step::Kind::Swap;
};

PivotalSession make_session(const FiniteGroup& g, const Zoo& zoo) {
  PivotalSession s;
  s.g = &g;
  const IrrepZoo& iz = zoo.irreps(g.name());
  s.conductor = session_conductor(g, iz);
  s.lifted = lift_zoo(iz, s.conductor);
  s.fourier = fourier_blocks(g, iz, s.conductor);
  for (const auto& ir : s.lifted.irreps) s.sqrt_d.push_back(sqrt_int(ir.module.dim, s.conductor));
  s.sqrt_big_d = sqrt_int(g.order(), s.conductor);
  s.swap_kind = g.has_z() ? Step::Kind::SuperSwap : Step::Kind::Swap;
  return s;
}

// l : k[G] (x) X -> X
MatC left_unit_matrix(const PivotalSession& s, const EquivariantBundle& v, bool drop_scale) {
  const FiniteGroup& g = *s.g;
  MatC out = zero_mat<Cyclo>(v.total, g.order() * v.total);
  for (size_t i = 0; i < s.lifted.irreps.size(); ++i) {
    const GModule& xi = s.lifted.irreps[i].module;
    Composite c;
    c.group = &g;
    c.inputs = {OracleFactor::of_module(xi), OracleFactor::dual_of_module(xi),
                OracleFactor::of_bundle(v)};
    c.steps.push_back({s.swap_kind, 1});
    c.steps.push_back({Step::Kind::HalfBraid, 0});
    c.steps.push_back({Step::Kind::ContractPair, 1});
    MatC li = evaluate(c).matrix;
    Cyclo w = drop_scale ? s.sqrt_d[i] : s.sqrt_d[i] / s.sqrt_big_d;
    out += w * spmul<Cyclo>(li, kron<Cyclo>(s.fourier.proj[i], id_mat<Cyclo>(v.total)));
  }
  return out;
}

// l^{-1} : X -> k[G] (x) X
MatC left_unit_inv_matrix(const PivotalSession& s, const EquivariantBundle& v, bool drop_scale) {
  const FiniteGroup& g = *s.g;
  MatC out = zero_mat<Cyclo>(g.order() * v.total, v.total);
  for (size_t i = 0; i < s.lifted.irreps.size(); ++i) {
    const GModule& xi = s.lifted.irreps[i].module;
    Composite c;
    c.group = &g;
    c.inputs = {OracleFactor::of_bundle(v)};
    Step coev{Step::Kind::InsertCoevPair, 1};
    coev.module = &xi;
    c.steps.push_back(coev);
    c.steps.push_back({Step::Kind::HalfBraidInv, 0});
    c.steps.push_back({s.swap_kind, 1});
    MatC fi = evaluate(c).matrix;
    Cyclo w = drop_scale ? s.sqrt_d[i] : s.sqrt_d[i] / s.sqrt_big_d;
    out += w * spmul<Cyclo>(kron<Cyclo>(s.fourier.inj[i], id_mat<Cyclo>(v.total)), fi);
  }
  return out;
}

// r : X (x) k[G] -> X; the unit strand approaches from the right, so the
// half-braiding enters with the opposite handedness to l.
MatC right_unit_matrix(const PivotalSession& s, const EquivariantBundle& v) {
  const FiniteGroup& g = *s.g;
  MatC out = zero_mat<Cyclo>(v.total, v.total * g.order());
  for (size_t i = 0; i < s.lifted.irreps.size(); ++i) {
    const GModule& xi = s.lifted.irreps[i].module;
    Composite c;
    c.group = &g;
    c.inputs = {OracleFactor::of_bundle(v), OracleFactor::of_module(xi),
                OracleFactor::dual_of_module(xi)};
    c.steps.push_back({Step::Kind::HalfBraidInv, 0});
    c.steps.push_back({s.swap_kind, 1});
    c.steps.push_back({Step::Kind::ContractPair, 0});
    MatC ri = evaluate(c).matrix;
    Cyclo w = s.sqrt_d[i] / s.sqrt_big_d;
    out += w * spmul<Cyclo>(ri, kron<Cyclo>(id_mat<Cyclo>(v.total), s.fourier.proj[i]));
  }
  return out;
}

// r^{-1} : X -> X (x) k[G]
MatC right_unit_inv_matrix(const PivotalSession& s, const EquivariantBundle& v) {
  const FiniteGroup& g = *s.g;
  MatC out = zero_mat<Cyclo>(v.total * g.order(), v.total);
  for (size_t i = 0; i < s.lifted.irreps.size(); ++i) {
    const GModule& xi = s.lifted.irreps[i].module;
    Composite c;
    c.group = &g;
    c.inputs = {OracleFactor::of_bundle(v)};
    Step coev{Step::Kind::InsertCoevPair, 0};
    coev.module = &xi;
    c.steps.push_back(coev);
    c.steps.push_back({s.swap_kind, 1});
    c.steps.push_back({Step::Kind::HalfBraid, 0});
    MatC fi = evaluate(c).matrix;
    Cyclo w = s.sqrt_d[i] / s.sqrt_big_d;
    out += w * spmul<Cyclo>(kron<Cyclo>(id_mat<Cyclo>(v.total), s.fourier.inj[i]), fi);
  }
  return out;
}

// ev : X^vee (x) X -> k[G]
MatC ev_matrix(const PivotalSession& s, const EquivariantBundle& v, const EquivariantBundle& dv) {
  const FiniteGroup& g = *s.g;
  MatC out = zero_mat<Cyclo>(g.order(), dv.total * v.total);
  for (size_t i = 0; i < s.lifted.irreps.size(); ++i) {
    const GModule& xi = s.lifted.irreps[i].module;
    Composite c;
    c.group = &g;
    c.inputs = {OracleFactor::of_bundle(dv), OracleFactor::of_bundle(v)};
    Step coev{Step::Kind::InsertCoevPair, 2};
    coev.module = &xi;
    c.steps.push_back(coev);
    c.steps.push_back({s.swap_kind, 1});
    c.steps.push_back({Step::Kind::HalfBraid, 1});
    c.steps.push_back({Step::Kind::ContractPair, 0});
    MatC ei = evaluate(c).matrix;
    Cyclo w = s.sqrt_d[i] / s.sqrt_big_d;
    out += w * spmul<Cyclo>(s.fourier.inj[i], ei);
  }
  return out;
}

// coev : k[G] -> X (x) X^vee
MatC coev_matrix(const PivotalSession& s, const EquivariantBundle& v,
                 const EquivariantBundle& dv) {
  const FiniteGroup& g = *s.g;
  MatC out = zero_mat<Cyclo>(v.total * dv.total, g.order());
  for (size_t i = 0; i < s.lifted.irreps.size(); ++i) {
    const GModule& xi = s.lifted.irreps[i].module;
    Composite c;
    c.group = &g;
    c.inputs = {OracleFactor::of_module(xi), OracleFactor::dual_of_module(xi)};
    Step coev{Step::Kind::InsertCoevPair, 2};
    coev.bundle_a = &v;
    coev.bundle_b = &dv;
    c.steps.push_back(coev);
    c.steps.push_back({s.swap_kind, 1});
    c.steps.push_back({Step::Kind::HalfBraid, 0});
    c.steps.push_back({Step::Kind::ContractPair, 1});
    MatC ci = evaluate(c).matrix;
    Cyclo w = s.sqrt_d[i] / s.sqrt_big_d;
    out += w * spmul<Cyclo>(ci, s.fourier.proj[i]);
  }
  return out;
}

}  // namespace

MatC pivotal_left_roundtrip(const EquivariantBundle& v, const Zoo& zoo, bool drop_dim_scale) {
  PivotalSession s = make_session(*v.group, zoo);
  MatC l = left_unit_matrix(s, v, drop_dim_scale);
  MatC linv = left_unit_inv_matrix(s, v, drop_dim_scale);
  return spmul<Cyclo>(l, linv);
}

PivotalMaps pivotal_maps(const EquivariantBundle& v, const Zoo& zoo) {
  PivotalSession s = make_session(*v.group, zoo);
  EquivariantBundle dv = dual_reduced(v);
  PivotalMaps m;
  m.l = left_unit_matrix(s, v, false);
  m.linv = left_unit_inv_matrix(s, v, false);
  m.r = right_unit_matrix(s, v);
  m.rinv = right_unit_inv_matrix(s, v);
  m.ev = ev_matrix(s, v, dv);
  m.coev = coev_matrix(s, v, dv);
  return m;
}

PivotalReport pivotal_checks(const EquivariantBundle& v, const Zoo& zoo) {
  PivotalReport rep;
  auto fail = [&](const std::string& m) {
    rep.pass = false;
    rep.failures.push_back(m);
  };
  const FiniteGroup& g = *v.group;
  PivotalSession s = make_session(g, zoo);
  int t = v.total;

  MatC l = left_unit_matrix(s, v, false);
  MatC linv = left_unit_inv_matrix(s, v, false);
  if (spmul<Cyclo>(l, linv) != id_mat<Cyclo>(t)) fail("l . l^{-1} != id");

  MatC r = right_unit_matrix(s, v);
  MatC rinv = right_unit_inv_matrix(s, v);
  if (spmul<Cyclo>(r, rinv) != id_mat<Cyclo>(t)) fail("r . r^{-1} != id");

  // the roundtrips are projectors of the fiberwise-product rank
  MatC pleft = spmul<Cyclo>(linv, l);
  if (spmul<Cyclo>(pleft, pleft) != pleft) fail("l^{-1} . l is not idempotent");
  if (rank_of<Cyclo>(pleft) != t) fail("l^{-1} . l has the wrong rank");

  // zigzag: r . (id (x) ev) . (coev (x) id) . l^{-1} = id
  EquivariantBundle dv = dual_reduced(v);
  MatC ev = ev_matrix(s, v, dv);
  MatC coev = coev_matrix(s, v, dv);
  MatC mid1 = kron<Cyclo>(coev, id_mat<Cyclo>(t));
  MatC mid2 = kron<Cyclo>(id_mat<Cyclo>(t), ev);
  MatC zig = spmul<Cyclo>(r, spmul<Cyclo>(mid2, spmul<Cyclo>(mid1, linv)));
  if (zig != id_mat<Cyclo>(t)) fail("zigzag through ev/coev != id");

  // dual involutivity on the nose
  EquivariantBundle ddv = dual_reduced(dual_reduced(v));
  if (ddv.fiber_dim != v.fiber_dim) fail("dual^2 changed the grading");
  for (int h = 0; h < g.order(); ++h)
    if (ddv.act[size_t(h)] != v.act[size_t(h)]) fail("dual^2 changed the action");

  return rep;
}

bool combine_check(const std::vector<const GModule*>& tuple, const IrrepZoo& zoo,
                   long conductor) {
  if (tuple.empty()) throw Error(Error::Kind::BadInput, "combine_check: empty tuple");
  long wdim = 1;
  for (auto* m : tuple) wdim *= m->dim;
  MatC acc = zero_mat<Cyclo>(wdim, wdim);
  for (const auto& ir : zoo.irreps) {
    GModule xi = lift_module(ir.module, conductor);
    GModule xid = dual(xi);
    std::vector<const GModule*> list = tuple;
    list.push_back(&xid);
    DualBases db = invariants_and_dual_basis(list);
    int d = xi.dim;
    for (Eigen::Index alpha = 0; alpha < db.basis.cols(); ++alpha) {
      // t : X_i -> W from the basis, u : W -> X_i from the dual basis
      MatC tmat = zero_mat<Cyclo>(wdim, d);
      for (long j = 0; j < wdim; ++j)
        for (int m = 0; m < d; ++m) tmat(j, m) = db.basis(j * d + m, alpha);
      // dual side dims: (d_i, d_n, ..., d_1)
      std::vector<long> rev_dims;
      for (auto it = tuple.rbegin(); it != tuple.rend(); ++it) rev_dims.push_back((*it)->dim);
      MatC umat = zero_mat<Cyclo>(d, wdim);
      for (long j = 0; j < wdim; ++j) {
        // decompose j over tuple dims, then flatten reversed
        std::vector<long> idx(tuple.size());
        long rem = j;
        for (int k = int(tuple.size()) - 1; k >= 0; --k) {
          idx[size_t(k)] = rem % tuple[size_t(k)]->dim;
          rem /= tuple[size_t(k)]->dim;
        }
        long rflat = 0;
        for (int k = int(tuple.size()) - 1; k >= 0; --k)
          rflat = rflat * tuple[size_t(k)]->dim + idx[size_t(k)];
        for (int m = 0; m < d; ++m) umat(m, j) = db.dual_basis(m * wdim + rflat, alpha);
      }
      acc += Cyclo(d) * spmul<Cyclo>(tmat, umat);
    }
  }
  return acc == id_mat<Cyclo>(wdim);
}

std::pair<Cyclo, Cyclo> regular_loop_traces(const IrrepZoo& zoo, long conductor) {
  Cyclo zoo_form(0);
  for (const auto& ir : zoo.irreps) zoo_form += Cyclo(long(ir.module.dim) * ir.module.dim);
  Cyclo reg_form(long(zoo.group->order()));
  (void)conductor;
  return {zoo_form, reg_form};
}

bool sliding_check(const GModule& strand, const IrrepZoo& zoo, long conductor) {
  const FiniteGroup& g = *strand.group;
  int dy = strand.dim;
  // left and right slides: the strand passes beside the closed regular loop
  auto [zoo_scalar, reg_scalar] = regular_loop_traces(zoo, conductor);
  if (!(zoo_scalar == reg_scalar)) return false;
  MatC left = zoo_scalar * id_mat<Cyclo>(dy);
  MatC right = reg_scalar * id_mat<Cyclo>(dy);
  // middle: strand absorbed into the loop through dual-basis nodes
  MatC middle = zero_mat<Cyclo>(dy, dy);
  for (const auto& iri : zoo.irreps)
    for (const auto& irj : zoo.irreps) {
      GModule xi = lift_module(iri.module, conductor);
      GModule xj = lift_module(irj.module, conductor);
      GModule pair = tensor(dual(xi), xj);
      std::vector<MatC> up = intertwiner_space(strand, pair);
      std::vector<MatC> down = intertwiner_space(pair, strand);
      if (up.size() != down.size()) throw Error(Error::Kind::DegeneratePairing, "node spaces differ");
      if (up.empty()) continue;
      Eigen::Index k = Eigen::Index(up.size());
      MatC pairing = zero_mat<Cyclo>(k, k);
      for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) {
          MatC comp = spmul<Cyclo>(down[size_t(b)], up[size_t(a)]);
          Cyclo tr(0);
          for (int m = 0; m < dy; ++m) tr += comp(m, m);
          pairing(a, b) = tr;
        }
      MatC cmat;
      try {
        cmat = invert<Cyclo>(pairing);
      } catch (const Error&) {
        throw Error(Error::Kind::DegeneratePairing, "trace pairing is singular");
      }
      Cyclo didj = Cyclo(long(iri.module.dim) * irj.module.dim);
      for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b)
          middle += didj * cmat(b, a) * spmul<Cyclo>(down[size_t(b)], up[size_t(a)]);
    }
  return left == middle && middle == right;
}

bool naturality_check(const std::vector<const GModule*>& tuple, const GModule& w1,
                      const MatC& f) {
  if (tuple.empty()) throw Error(Error::Kind::BadInput, "naturality_check: empty tuple");
  // LHS: sum_alpha (f on leg 1 of phi_alpha) (x) phi^alpha with bases for
  // (V1,...,Vn); RHS: sum_beta phi'_beta (x) (f^* on the last leg of
  // phi'^beta) with bases for (W1, V2, ..., Vn)
  std::vector<const GModule*> wtuple = tuple;
  wtuple[0] = &w1;
  DualBases dv = invariants_and_dual_basis(tuple);
  DualBases dw = invariants_and_dual_basis(wtuple);
  long rest = 1;
  for (size_t i = 1; i < tuple.size(); ++i) rest *= tuple[size_t(i)]->dim;
  MatC fbig = kron<Cyclo>(f, id_mat<Cyclo>(rest));              // V1... -> W1...
  long dualdim_v = tuple[0]->dim;
  long prefix = 1;
  for (size_t i = 1; i < tuple.size(); ++i) prefix *= tuple[size_t(i)]->dim;
  // f^T maps W1^* coordinates to V1^* coordinates; the starred leg is last
  MatC ftbig = kron<Cyclo>(id_mat<Cyclo>(prefix), MatC(f.transpose()));
  (void)dualdim_v;
  long lrows = fbig.rows();
  long rcols_v = dv.dual_basis.rows();
  MatC lhs = zero_mat<Cyclo>(lrows, rcols_v);
  for (Eigen::Index a = 0; a < dv.basis.cols(); ++a)
    lhs += spmul<Cyclo>(MatC(fbig * dv.basis.col(a)), MatC(dv.dual_basis.col(a).transpose()));
  MatC rhs = zero_mat<Cyclo>(lrows, rcols_v);
  for (Eigen::Index b = 0; b < dw.basis.cols(); ++b)
    rhs += spmul<Cyclo>(MatC(dw.basis.col(b)), MatC((ftbig * dw.dual_basis.col(b)).transpose()));
  return lhs == rhs;
}

MatC delta_action_via_halfbraiding(const EquivariantBundle& v, int g) {
  Composite c;
  c.group = v.group;
  c.inputs = {OracleFactor::of_bundle(v)};
  Step ins{Step::Kind::InsertElemKG, 0};
  ins.elem = v.group->identity();
  c.steps.push_back(ins);
  c.steps.push_back({Step::Kind::HalfBraid, 0});
  Step df{Step::Kind::DeltaFunctional, 1};
  df.elem = g;
  c.steps.push_back(df);
  return evaluate(c).matrix;
}

bool u_equivariance_check(const EquivariantBundle& v) {
  const FiniteGroup& g = *v.group;
  // the dualized half-braiding: standard right dual, then fiberwise left dual
  EquivariantBundle d = dual_reduced(dual_convolution(v));
  EquivariantBundle u = us_action(v);
  if (d.fiber_dim != u.fiber_dim) return false;
  for (int h = 0; h < g.order(); ++h)
    if (d.act[size_t(h)] != u.act[size_t(h)]) return false;
  // the delta_g action through the dualized object's half-braiding equals
  // the delta_{g^-1} action of V, transported by the regrading
  for (int x = 0; x < g.order(); ++x) {
    MatC via = delta_action_via_halfbraiding(d, x);
    if (via != u.grading_projector(x)) return false;
    // grading projector of U_S(V) at x is by construction the delta_{x^-1}
    // projector of V rerouted; check the dimension agreement explicitly
    MatC orig = v.grading_projector(g.inv(x));
    Cyclo tr_via(0), tr_orig(0);
    for (int m = 0; m < d.total; ++m) tr_via += via(m, m);
    for (int m = 0; m < v.total; ++m) tr_orig += orig(m, m);
    if (!(tr_via == tr_orig)) return false;
  }
  return true;
}

MatC regular_projector(const EquivariantBundle& v) {
  const FiniteGroup& g = *v.group;
  Composite c;
  c.group = &g;
  c.inputs = {OracleFactor::of_bundle(v)};
  Step::Kind sw = g.has_z() ? Step::Kind::SuperSwap : Step::Kind::Swap;
  c.steps.push_back({Step::Kind::InsertCoevKG, 0});
  c.steps.push_back({sw, 1});
  c.steps.push_back({Step::Kind::HalfBraid, 0});
  c.steps.push_back({Step::Kind::EvKG, 1});
  Step sc{Step::Kind::Scalar, 0};
  sc.scalar = Cyclo(Rational(1, g.order()));
  c.steps.push_back(sc);
  return evaluate(c).matrix;
}

}  // namespace redten
