#include "redten/bundle.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace redten {

int EquivariantBundle::fiber_of(int flat) const {
  for (int g = 0; g < int(fiber_dim.size()); ++g)
    if (flat >= offset[size_t(g)] && flat < offset[size_t(g)] + fiber_dim[size_t(g)]) return g;
  throw Error(Error::Kind::ShapeMismatch, "flat index out of range");
}

MatC EquivariantBundle::grading_projector(int g) const {
  MatC p = zero_mat<Cyclo>(total, total);
  for (int k = 0; k < fiber_dim[size_t(g)]; ++k) {
    int i = offset[size_t(g)] + k;
    p(i, i) = Cyclo(1);
  }
  return p;
}

MatC EquivariantBundle::action_of(const SparseElem& x, const StructAlgebra& dg) const {
  int n = group->order();
  (void)dg;
  MatC out = zero_mat<Cyclo>(total, total);
  for (const auto& [idx, c] : x) {
    int g = idx / n, h = idx % n;
    // (g (x) delta_h) . v = g . (delta_h v)
    MatC m = spmul<Cyclo>(act[size_t(g)], grading_projector(h));
    out += Cyclo(c) * m;
  }
  return out;
}

void finish_offsets(EquivariantBundle& v) {
  v.offset.assign(v.fiber_dim.size(), 0);
  int acc = 0;
  for (size_t g = 0; g < v.fiber_dim.size(); ++g) {
    v.offset[g] = acc;
    acc += v.fiber_dim[g];
  }
  v.total = acc;
}

void validate_bundle(const EquivariantBundle& v) {
  const FiniteGroup& g = *v.group;
  if (int(v.fiber_dim.size()) != g.order())
    throw Error(Error::Kind::ShapeMismatch, "fiber count != |G|");
  if (int(v.act.size()) != g.order())
    throw Error(Error::Kind::ShapeMismatch, "action count != |G|");
  if (v.act[size_t(g.identity())] != id_mat<Cyclo>(v.total))
    throw Error(Error::Kind::BadInput, "action(e) != identity");
  for (int a = 0; a < g.order(); ++a) {
    for (int col = 0; col < v.total; ++col) {
      int x = v.fiber_of(col);
      int tgt = g.conj(a, x);
      for (int row = 0; row < v.total; ++row) {
        if (v.fiber_of(row) == tgt) continue;
        if (!(v.act[size_t(a)](row, col) == Cyclo(0)))
          throw Error(Error::Kind::BadInput, "action(" + std::to_string(a) +
                                                 ") leaves the required fiber block");
      }
    }
    for (int b = 0; b < g.order(); ++b)
      if (spmul<Cyclo>(v.act[size_t(a)], v.act[size_t(b)]) != v.act[size_t(g.mul(a, b))])
        throw Error(Error::Kind::BadInput, "action is not multiplicative at (" +
                                               std::to_string(a) + "," + std::to_string(b) + ")");
  }
  if (g.has_z()) {
    const MatC& az = v.act[size_t(*g.z())];
    if (spmul<Cyclo>(az, az) != id_mat<Cyclo>(v.total))
      throw Error(Error::Kind::BadInput, "z does not act as an involution");
  }
}

ParitySplit parity_split(const EquivariantBundle& v) {
  const FiniteGroup& g = *v.group;
  if (!g.has_z()) throw Error(Error::Kind::ZMissing, "parity_split needs z");
  const MatC& az = v.act[size_t(*g.z())];
  ParitySplit ps;
  ps.even.resize(size_t(g.order()));
  ps.odd.resize(size_t(g.order()));
  ps.even_dim.assign(size_t(g.order()), 0);
  ps.odd_dim.assign(size_t(g.order()), 0);
  for (int x = 0; x < g.order(); ++x) {
    int d = v.fiber_dim[size_t(x)];
    int off = v.offset[size_t(x)];
    MatC blk = az.block(off, off, d, d);
    MatC even_local = nullspace_basis<Cyclo>(MatC(blk - id_mat<Cyclo>(d)));
    MatC odd_local = nullspace_basis<Cyclo>(MatC(blk + id_mat<Cyclo>(d)));
    ps.even_dim[size_t(x)] = int(even_local.cols());
    ps.odd_dim[size_t(x)] = int(odd_local.cols());
    MatC even_glob = zero_mat<Cyclo>(v.total, even_local.cols());
    MatC odd_glob = zero_mat<Cyclo>(v.total, odd_local.cols());
    even_glob.block(off, 0, d, even_local.cols()) = even_local;
    odd_glob.block(off, 0, d, odd_local.cols()) = odd_local;
    ps.even[size_t(x)] = std::move(even_glob);
    ps.odd[size_t(x)] = std::move(odd_glob);
    if (ps.even_dim[size_t(x)] + ps.odd_dim[size_t(x)] != d)
      throw Error(Error::Kind::BadInput, "parity eigenspaces do not fill the fiber");
  }
  return ps;
}

GModule forget_grading(const EquivariantBundle& v, long conductor) {
  GModule m;
  m.group = v.group;
  m.dim = v.total;
  if (v.total == 0) {
    m.rho.assign(size_t(v.group->order()), MatC::Zero(0, 0));
    return m;
  }
  (void)conductor;
  m.rho = v.act;
  return m;
}

EquivariantBundle zero_bundle(const FiniteGroup& g) {
  EquivariantBundle v;
  v.group = &g;
  v.fiber_dim.assign(size_t(g.order()), 0);
  finish_offsets(v);
  v.act.assign(size_t(g.order()), MatC::Zero(0, 0));
  return v;
}

EquivariantBundle unit_reduced(const FiniteGroup& g) {
  EquivariantBundle v;
  v.group = &g;
  v.fiber_dim.assign(size_t(g.order()), 1);
  finish_offsets(v);
  v.act.resize(size_t(g.order()));
  for (int h = 0; h < g.order(); ++h) {
    MatC m = zero_mat<Cyclo>(v.total, v.total);
    for (int x = 0; x < g.order(); ++x) m(g.conj(h, x), x) = Cyclo(1);
    v.act[size_t(h)] = std::move(m);
  }
  return v;
}

EquivariantBundle unit_convolution(const FiniteGroup& g) {
  EquivariantBundle v;
  v.group = &g;
  v.fiber_dim.assign(size_t(g.order()), 0);
  v.fiber_dim[size_t(g.identity())] = 1;
  finish_offsets(v);
  v.act.assign(size_t(g.order()), id_mat<Cyclo>(1));
  return v;
}

EmbeddedBundle convolution_tensor(const EquivariantBundle& v, const EquivariantBundle& w) {
  if (v.group != w.group) throw Error(Error::Kind::GroupMismatch, "convolution: different groups");
  const FiniteGroup& g = *v.group;
  int n = g.order();
  EquivariantBundle out;
  out.group = &g;
  out.fiber_dim.assign(size_t(n), 0);
  // conv coordinate (b; h, i, j): the summand V_{bh} (x) W_{h^-1}
  std::vector<int> to_kron;  // conv flat -> kron flat
  for (int b = 0; b < n; ++b) {
    for (int h = 0; h < n; ++h) {
      int a = g.mul(b, h), c = g.inv(h);
      for (int i = 0; i < v.fiber_dim[size_t(a)]; ++i)
        for (int j = 0; j < w.fiber_dim[size_t(c)]; ++j) {
          to_kron.push_back((v.offset[size_t(a)] + i) * w.total + w.offset[size_t(c)] + j);
          ++out.fiber_dim[size_t(b)];
        }
    }
  }
  finish_offsets(out);
  std::vector<int> from_kron(size_t(std::max(1, v.total * w.total)), -1);
  for (size_t p = 0; p < to_kron.size(); ++p) from_kron[size_t(to_kron[p])] = int(p);
  out.act.assign(size_t(n), MatC());
  for (int x = 0; x < n; ++x) {
    MatC m = zero_mat<Cyclo>(out.total, out.total);
    const MatC& av = v.act[size_t(x)];
    const MatC& aw = w.act[size_t(x)];
    for (int iv = 0; iv < v.total; ++iv)
      for (int jv = 0; jv < v.total; ++jv) {
        if (av(iv, jv) == Cyclo(0)) continue;
        for (int iw = 0; iw < w.total; ++iw)
          for (int jw = 0; jw < w.total; ++jw) {
            if (aw(iw, jw) == Cyclo(0)) continue;
            int row = from_kron[size_t(iv * w.total + iw)];
            int col = from_kron[size_t(jv * w.total + jw)];
            m(row, col) = av(iv, jv) * aw(iw, jw);
          }
      }
    out.act[size_t(x)] = std::move(m);
  }
  EmbeddedBundle eb;
  eb.bundle = std::move(out);
  eb.embedding = zero_mat<Cyclo>(v.total * w.total, eb.bundle.total);
  for (size_t p = 0; p < to_kron.size(); ++p) eb.embedding(to_kron[p], Eigen::Index(p)) = Cyclo(1);
  return eb;
}

EmbeddedBundle reduced_tensor(const EquivariantBundle& v, const EquivariantBundle& w) {
  if (v.group != w.group) throw Error(Error::Kind::GroupMismatch, "reduced: different groups");
  const FiniteGroup& g = *v.group;
  int n = g.order();
  EquivariantBundle out;
  out.group = &g;
  out.fiber_dim.assign(size_t(n), 0);
  std::vector<int> to_kron;
  for (int b = 0; b < n; ++b)
    for (int i = 0; i < v.fiber_dim[size_t(b)]; ++i)
      for (int j = 0; j < w.fiber_dim[size_t(b)]; ++j) {
        to_kron.push_back((v.offset[size_t(b)] + i) * w.total + w.offset[size_t(b)] + j);
        ++out.fiber_dim[size_t(b)];
      }
  finish_offsets(out);
  std::vector<int> from_kron(size_t(std::max(1, v.total * w.total)), -1);
  for (size_t p = 0; p < to_kron.size(); ++p) from_kron[size_t(to_kron[p])] = int(p);
  out.act.assign(size_t(n), MatC());
  for (int x = 0; x < n; ++x) {
    MatC m = zero_mat<Cyclo>(out.total, out.total);
    const MatC& av = v.act[size_t(x)];
    const MatC& aw = w.act[size_t(x)];
    for (size_t pcol = 0; pcol < to_kron.size(); ++pcol) {
      int jv = to_kron[pcol] / w.total, jw = to_kron[pcol] % w.total;
      for (int iv = 0; iv < v.total; ++iv) {
        if (av(iv, jv) == Cyclo(0)) continue;
        for (int iw = 0; iw < w.total; ++iw) {
          if (aw(iw, jw) == Cyclo(0)) continue;
          int row = from_kron[size_t(iv * w.total + iw)];
          if (row < 0) continue;
          m(row, Eigen::Index(pcol)) = av(iv, jv) * aw(iw, jw);
        }
      }
    }
    out.act[size_t(x)] = std::move(m);
  }
  EmbeddedBundle eb;
  eb.bundle = std::move(out);
  eb.embedding = zero_mat<Cyclo>(v.total * w.total, eb.bundle.total);
  for (size_t p = 0; p < to_kron.size(); ++p) eb.embedding(to_kron[p], Eigen::Index(p)) = Cyclo(1);
  return eb;
}

namespace {

struct RedZBlock {
  int base = 0;
  int sigma = 0, tau = 0;
  int vfiber = 0, wfiber = 0;
  int cols_v = 0, cols_w = 0;
  int start = 0;
};

struct RedZData {
  EmbeddedBundle eb;
  std::vector<RedZBlock> blocks;
  MatC left_inv;
};

RedZData redz_assemble(const EquivariantBundle& v, const EquivariantBundle& w) {
  if (v.group != w.group) throw Error(Error::Kind::GroupMismatch, "reduced_z: different groups");
  const FiniteGroup& g = *v.group;
  if (!g.has_z()) throw Error(Error::Kind::ZMissing, "reduced_tensor_z needs z");
  int z = *g.z();
  int n = g.order();
  ParitySplit pv = parity_split(v);
  ParitySplit pw = parity_split(w);

  EquivariantBundle out;
  out.group = &g;
  out.fiber_dim.assign(size_t(n), 0);
  std::vector<RedZBlock> blocks;
  std::vector<VecC> cols;
  for (int b = 0; b < n; ++b)
    for (int sigma = 0; sigma < 2; ++sigma)
      for (int tau = 0; tau < 2; ++tau) {
        int vf = (tau == 0) ? b : g.mul(b, z);
        int wf = (sigma == 0) ? b : g.mul(b, z);
        const MatC& ev = (sigma == 0) ? pv.even[size_t(vf)] : pv.odd[size_t(vf)];
        const MatC& ew = (tau == 0) ? pw.even[size_t(wf)] : pw.odd[size_t(wf)];
        if (ev.cols() == 0 || ew.cols() == 0) continue;
        RedZBlock blk{b, sigma, tau, vf, wf, int(ev.cols()), int(ew.cols()), int(cols.size())};
        for (Eigen::Index u = 0; u < ev.cols(); ++u)
          for (Eigen::Index t = 0; t < ew.cols(); ++t) {
            VecC col = VecC::Zero(v.total * w.total);
            for (int a = 0; a < v.total; ++a) {
              if (ev(a, u) == Cyclo(0)) continue;
              for (int c = 0; c < w.total; ++c) {
                if (ew(c, t) == Cyclo(0)) continue;
                col(a * w.total + c) = ev(a, u) * ew(c, t);
              }
            }
            cols.push_back(std::move(col));
          }
        out.fiber_dim[size_t(b)] += blk.cols_v * blk.cols_w;
        blocks.push_back(blk);
      }
  finish_offsets(out);
  MatC embedding = zero_mat<Cyclo>(v.total * w.total, int(cols.size()));
  for (size_t p = 0; p < cols.size(); ++p) embedding.col(Eigen::Index(p)) = cols[p];
  MatC linv =
      cols.empty() ? zero_mat<Cyclo>(0, v.total * w.total) : left_inverse<Cyclo>(embedding);
  out.act.assign(size_t(n), MatC());
  for (int x = 0; x < n; ++x) {
    MatC ke = zero_mat<Cyclo>(v.total * w.total, embedding.cols());
    const MatC& av = v.act[size_t(x)];
    const MatC& aw = w.act[size_t(x)];
    for (Eigen::Index c = 0; c < embedding.cols(); ++c) {
      for (int jv = 0; jv < v.total; ++jv)
        for (int jw = 0; jw < w.total; ++jw) {
          const Cyclo& e = embedding(jv * w.total + jw, c);
          if (e == Cyclo(0)) continue;
          for (int iv = 0; iv < v.total; ++iv) {
            if (av(iv, jv) == Cyclo(0)) continue;
            for (int iw = 0; iw < w.total; ++iw) {
              if (aw(iw, jw) == Cyclo(0)) continue;
              ke(iv * w.total + iw, c) += av(iv, jv) * aw(iw, jw) * e;
            }
          }
        }
    }
    out.act[size_t(x)] = spmul<Cyclo>(linv, ke);
  }
  RedZData data;
  data.eb.bundle = std::move(out);
  data.eb.embedding = std::move(embedding);
  data.blocks = std::move(blocks);
  data.left_inv = std::move(linv);
  return data;
}

}  // namespace

EmbeddedBundle reduced_tensor_z(const EquivariantBundle& v, const EquivariantBundle& w) {
  return redz_assemble(v, w).eb;
}

EquivariantBundle dual_reduced(const EquivariantBundle& v) {
  const FiniteGroup& g = *v.group;
  EquivariantBundle out;
  out.group = &g;
  out.fiber_dim = v.fiber_dim;
  out.offset = v.offset;
  out.total = v.total;
  out.act.assign(size_t(g.order()), MatC());
  for (int h = 0; h < g.order(); ++h) {
    MatC m = zero_mat<Cyclo>(v.total, v.total);
    const MatC& ahinv = v.act[size_t(g.inv(h))];
    for (int x = 0; x < g.order(); ++x) {
      int tgt = g.conj(h, x);
      for (int k = 0; k < v.fiber_dim[size_t(x)]; ++k)
        for (int mm = 0; mm < v.fiber_dim[size_t(tgt)]; ++mm)
          m(out.offset[size_t(tgt)] + mm, out.offset[size_t(x)] + k) =
              ahinv(v.offset[size_t(x)] + k, v.offset[size_t(tgt)] + mm);
    }
    out.act[size_t(h)] = std::move(m);
  }
  return out;
}

EquivariantBundle dual_convolution(const EquivariantBundle& v) {
  const FiniteGroup& g = *v.group;
  EquivariantBundle out;
  out.group = &g;
  out.fiber_dim.assign(size_t(g.order()), 0);
  for (int x = 0; x < g.order(); ++x) out.fiber_dim[size_t(x)] = v.fiber_dim[size_t(g.inv(x))];
  finish_offsets(out);
  out.act.assign(size_t(g.order()), MatC());
  for (int h = 0; h < g.order(); ++h) {
    MatC m = zero_mat<Cyclo>(out.total, out.total);
    const MatC& ahinv = v.act[size_t(g.inv(h))];
    for (int x = 0; x < g.order(); ++x) {
      int tgt = g.conj(h, x);
      int xs = g.inv(x), tgts = g.inv(tgt);
      for (int k = 0; k < out.fiber_dim[size_t(x)]; ++k)
        for (int mm = 0; mm < out.fiber_dim[size_t(tgt)]; ++mm)
          m(out.offset[size_t(tgt)] + mm, out.offset[size_t(x)] + k) =
              ahinv(v.offset[size_t(xs)] + k, v.offset[size_t(tgts)] + mm);
    }
    out.act[size_t(h)] = std::move(m);
  }
  return out;
}

EquivariantBundle induction_I(const GModule& a) {
  const FiniteGroup& g = *a.group;
  EquivariantBundle out;
  out.group = &g;
  out.fiber_dim.assign(size_t(g.order()), a.dim);
  finish_offsets(out);
  out.act.assign(size_t(g.order()), MatC());
  for (int h = 0; h < g.order(); ++h) {
    MatC m = zero_mat<Cyclo>(out.total, out.total);
    for (int x = 0; x < g.order(); ++x) {
      int tgt = g.conj(h, x);
      m.block(out.offset[size_t(tgt)], out.offset[size_t(x)], a.dim, a.dim) = a.act(h);
    }
    out.act[size_t(h)] = std::move(m);
  }
  return out;
}

std::vector<MatC> bundle_hom(const EquivariantBundle& v, const EquivariantBundle& w) {
  if (v.group != w.group) throw Error(Error::Kind::GroupMismatch, "bundle_hom: different groups");
  const FiniteGroup& g = *v.group;
  if (v.total == 0 || w.total == 0) return {};
  std::vector<int> ustart(size_t(g.order()), 0);
  int unknowns = 0;
  for (int b = 0; b < g.order(); ++b) {
    ustart[size_t(b)] = unknowns;
    unknowns += v.fiber_dim[size_t(b)] * w.fiber_dim[size_t(b)];
  }
  if (unknowns == 0) return {};
  std::vector<int> gens = g.generators();
  long rows = 0;
  for (int b = 0; b < g.order(); ++b) rows += long(v.fiber_dim[size_t(b)]) * w.total;
  rows *= long(gens.size());
  MatC cons = zero_mat<Cyclo>(rows, unknowns);
  Eigen::Index row = 0;
  for (int ge : gens) {
    const MatC& avm = v.act[size_t(ge)];
    const MatC& awm = w.act[size_t(ge)];
    for (int b = 0; b < g.order(); ++b) {
      int tgt = g.conj(ge, b);
      int dvb = v.fiber_dim[size_t(b)], dwt = w.fiber_dim[size_t(tgt)];
      for (int i = 0; i < dwt; ++i)
        for (int j = 0; j < dvb; ++j) {
          for (int k = 0; k < v.fiber_dim[size_t(tgt)]; ++k) {
            const Cyclo& c = avm(v.offset[size_t(tgt)] + k, v.offset[size_t(b)] + j);
            if (c == Cyclo(0)) continue;
            cons(row, ustart[size_t(tgt)] + i * v.fiber_dim[size_t(tgt)] + k) += c;
          }
          for (int l = 0; l < w.fiber_dim[size_t(b)]; ++l) {
            const Cyclo& c = awm(w.offset[size_t(tgt)] + i, w.offset[size_t(b)] + l);
            if (c == Cyclo(0)) continue;
            cons(row, ustart[size_t(b)] + l * v.fiber_dim[size_t(b)] + j) -= c;
          }
          ++row;
        }
    }
  }
  MatC consr = cons.topRows(row);
  MatC null = nullspace_basis<Cyclo>(consr);
  std::vector<MatC> basis;
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    MatC m = zero_mat<Cyclo>(w.total, v.total);
    for (int b = 0; b < g.order(); ++b)
      for (int i = 0; i < w.fiber_dim[size_t(b)]; ++i)
        for (int j = 0; j < v.fiber_dim[size_t(b)]; ++j)
          m(w.offset[size_t(b)] + i, v.offset[size_t(b)] + j) =
              null(ustart[size_t(b)] + i * v.fiber_dim[size_t(b)] + j, c);
    basis.push_back(std::move(m));
  }
  return basis;
}

int bundle_hom_dim(const EquivariantBundle& v, const EquivariantBundle& w) {
  return int(bundle_hom(v, w).size());
}

bool verify_dominance(const EquivariantBundle& v, long conductor) {
  if (v.total == 0) throw Error(Error::Kind::NotNonzero, "verify_dominance on the zero bundle");
  GModule f = forget_grading(v, conductor);
  EquivariantBundle ind = induction_I(f);
  return bundle_hom_dim(ind, v) >= 1;
}

EquivariantBundle us_action(const EquivariantBundle& v) {
  const FiniteGroup& g = *v.group;
  EquivariantBundle out;
  out.group = &g;
  out.fiber_dim.assign(size_t(g.order()), 0);
  for (int x = 0; x < g.order(); ++x) out.fiber_dim[size_t(x)] = v.fiber_dim[size_t(g.inv(x))];
  finish_offsets(out);
  std::vector<int> to_old(size_t(std::max(1, out.total)), 0);
  for (int x = 0; x < g.order(); ++x)
    for (int k = 0; k < out.fiber_dim[size_t(x)]; ++k)
      to_old[size_t(out.offset[size_t(x)] + k)] = v.offset[size_t(g.inv(x))] + k;
  out.act.assign(size_t(g.order()), MatC());
  for (int h = 0; h < g.order(); ++h) {
    MatC m = zero_mat<Cyclo>(out.total, out.total);
    for (int i = 0; i < out.total; ++i)
      for (int j = 0; j < out.total; ++j)
        m(i, j) = v.act[size_t(h)](to_old[size_t(i)], to_old[size_t(j)]);
    out.act[size_t(h)] = std::move(m);
  }
  return out;
}

EmbeddedBundle lambda_pullback(const EquivariantBundle& v) {
  const FiniteGroup& g = *v.group;
  if (!g.has_z()) throw Error(Error::Kind::ZMissing, "lambda_pullback needs z");
  int z = *g.z();
  ParitySplit ps = parity_split(v);
  EquivariantBundle out;
  out.group = &g;
  out.fiber_dim.assign(size_t(g.order()), 0);
  std::vector<VecC> cols;
  for (int b = 0; b < g.order(); ++b) {
    const MatC& even = ps.even[size_t(b)];
    const MatC& odd = ps.odd[size_t(g.mul(b, z))];
    for (Eigen::Index c = 0; c < even.cols(); ++c) cols.push_back(even.col(c));
    for (Eigen::Index c = 0; c < odd.cols(); ++c) cols.push_back(odd.col(c));
    out.fiber_dim[size_t(b)] = int(even.cols() + odd.cols());
  }
  finish_offsets(out);
  MatC embedding = zero_mat<Cyclo>(v.total, out.total);
  for (size_t p = 0; p < cols.size(); ++p) embedding.col(Eigen::Index(p)) = cols[p];
  MatC linv = (out.total == 0) ? zero_mat<Cyclo>(0, v.total) : left_inverse<Cyclo>(embedding);
  out.act.assign(size_t(g.order()), MatC());
  for (int h = 0; h < g.order(); ++h)
    out.act[size_t(h)] = spmul<Cyclo>(linv, spmul<Cyclo>(v.act[size_t(h)], embedding));
  EmbeddedBundle eb;
  eb.bundle = std::move(out);
  eb.embedding = std::move(embedding);
  return eb;
}

bool certified_iso(const EquivariantBundle& v, const EquivariantBundle& w, std::uint64_t seed) {
  if (v.fiber_dim != w.fiber_dim) return false;
  if (v.group->has_z()) {
    ParitySplit pv = parity_split(v), pw = parity_split(w);
    if (pv.even_dim != pw.even_dim || pv.odd_dim != pw.odd_dim) return false;
  }
  if (v.total == 0) return true;
  std::vector<MatC> hom = bundle_hom(v, w);
  if (hom.empty()) return false;
  for (const auto& h : hom)
    if (rank_of<Cyclo>(h) == v.total) return true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int t = 0; t < 64; ++t) {
    MatC m = zero_mat<Cyclo>(w.total, v.total);
    for (const auto& h : hom) m += Cyclo(coeff(rng)) * h;
    if (rank_of<Cyclo>(m) == v.total) return true;
  }
  return false;
}

std::vector<SimpleBundle> simples(const FiniteGroup& g, const Zoo& zoo, long conductor) {
  if (!zoo.has_group(g.name()))
    throw Error(Error::Kind::UnknownGroup, "group not in zoo: " + g.name());
  std::vector<SimpleBundle> out;
  const auto& refs = zoo.centralizers(g.name());
  for (const auto& cls : g.conjugacy_classes()) {
    const CentralizerRef* ref = nullptr;
    for (const auto& r : refs)
      if (r.class_rep == cls.representative) ref = &r;
    if (!ref)
      throw Error(Error::Kind::MissingCentralizerZoo,
                  "no centralizer reference for class rep " + std::to_string(cls.representative));
    Subgroup sub = subgroup_from_elements(g, g.centralizer(cls.representative));
    const IrrepZoo& ziz = zoo.irreps(ref->group);
    std::vector<int> coset_rep(cls.members.size(), -1);
    for (size_t mi = 0; mi < cls.members.size(); ++mi)
      for (int t = 0; t < g.order(); ++t)
        if (g.conj(t, cls.representative) == cls.members[mi]) {
          coset_rep[mi] = t;
          break;
        }
    auto member_index = [&](int m) {
      for (size_t mi = 0; mi < cls.members.size(); ++mi)
        if (cls.members[mi] == m) return int(mi);
      throw Error(Error::Kind::BadInput, "conjugation left the class (impossible)");
    };
    for (const auto& ir : ziz.irreps) {
      GModule rho = lift_module(ir.module, conductor);
      int d = rho.dim;
      EquivariantBundle b;
      b.group = &g;
      b.fiber_dim.assign(size_t(g.order()), 0);
      for (int m : cls.members) b.fiber_dim[size_t(m)] = d;
      finish_offsets(b);
      b.act.assign(size_t(g.order()), MatC());
      for (int h = 0; h < g.order(); ++h) {
        MatC mat = zero_mat<Cyclo>(b.total, b.total);
        for (size_t mi = 0; mi < cls.members.size(); ++mi) {
          int m = cls.members[mi];
          int tm = coset_rep[mi];
          int m2 = g.conj(h, m);
          int mi2 = member_index(m2);
          int t2 = coset_rep[size_t(mi2)];
          int s = g.mul(g.inv(t2), g.mul(h, tm));
          int s_sub = sub.ambient_to_sub[size_t(s)];
          if (s_sub < 0) throw Error(Error::Kind::BadInput, "coset algebra inconsistency");
          int s_abs = ref->mapping[size_t(s_sub)];
          mat.block(b.offset[size_t(m2)], b.offset[size_t(m)], d, d) = rho.act(s_abs);
        }
        b.act[size_t(h)] = std::move(mat);
      }
      SimpleBundle sb;
      sb.bundle = std::move(b);
      sb.class_rep = cls.representative;
      sb.centralizer_label = ir.label;
      sb.name = "(c" + std::to_string(cls.representative) + "," + ir.label + ")";
      out.push_back(std::move(sb));
    }
  }
  return out;
}

EquivariantBundle product_bundle(const EquivariantBundle& v, const EquivariantBundle& w,
                                 ProductKind kind) {
  switch (kind) {
    case ProductKind::Convolution:
      return convolution_tensor(v, w).bundle;
    case ProductKind::Reduced:
      return reduced_tensor(v, w).bundle;
    case ProductKind::ReducedZ:
      return reduced_tensor_z(v, w).bundle;
  }
  throw Error(Error::Kind::BadInput, "bad product kind");
}

FusionTable fusion_table(const std::vector<SimpleBundle>& simple_list, ProductKind kind) {
  FusionTable t;
  size_t k = simple_list.size();
  for (const auto& s : simple_list) t.labels.push_back(s.name);
  t.mult.assign(k, std::vector<std::vector<int>>(k, std::vector<int>(k, 0)));
  for (size_t a = 0; a < k; ++a)
    for (size_t b = 0; b < k; ++b) {
      EquivariantBundle prod = product_bundle(simple_list[a].bundle, simple_list[b].bundle, kind);
      for (size_t c = 0; c < k; ++c)
        t.mult[a][b][c] = bundle_hom_dim(prod, simple_list[c].bundle);
    }
  return t;
}

namespace {
EquivariantBundle bundle_direct_sum(const EquivariantBundle& a, const EquivariantBundle& b) {
  const FiniteGroup& g = *a.group;
  EquivariantBundle out;
  out.group = &g;
  out.fiber_dim.assign(size_t(g.order()), 0);
  for (int x = 0; x < g.order(); ++x)
    out.fiber_dim[size_t(x)] = a.fiber_dim[size_t(x)] + b.fiber_dim[size_t(x)];
  finish_offsets(out);
  auto place = [&](int x, int k, bool second) {
    return out.offset[size_t(x)] + (second ? a.fiber_dim[size_t(x)] : 0) + k;
  };
  out.act.assign(size_t(g.order()), MatC());
  for (int h = 0; h < g.order(); ++h) {
    MatC m = zero_mat<Cyclo>(out.total, out.total);
    for (int x = 0; x < g.order(); ++x) {
      int tgt = g.conj(h, x);
      for (int i = 0; i < a.fiber_dim[size_t(tgt)]; ++i)
        for (int j = 0; j < a.fiber_dim[size_t(x)]; ++j)
          m(place(tgt, i, false), place(x, j, false)) =
              a.act[size_t(h)](a.offset[size_t(tgt)] + i, a.offset[size_t(x)] + j);
      for (int i = 0; i < b.fiber_dim[size_t(tgt)]; ++i)
        for (int j = 0; j < b.fiber_dim[size_t(x)]; ++j)
          m(place(tgt, i, true), place(x, j, true)) =
              b.act[size_t(h)](b.offset[size_t(tgt)] + i, b.offset[size_t(x)] + j);
    }
    out.act[size_t(h)] = std::move(m);
  }
  return out;
}
}  // namespace

EquivariantBundle random_bundle(const FiniteGroup& g, const Zoo& zoo, long conductor,
                                std::mt19937_64& rng, int max_total_dim) {
  std::vector<SimpleBundle> s = simples(g, zoo, conductor);
  std::uniform_int_distribution<size_t> pick(0, s.size() - 1);
  EquivariantBundle acc = zero_bundle(g);
  int guard = 0;
  while (acc.total == 0 || (acc.total < max_total_dim && (rng() % 2 == 0) && guard < 8)) {
    ++guard;
    const EquivariantBundle& piece = s[pick(rng)].bundle;
    if (acc.total + piece.total > max_total_dim && acc.total > 0) break;
    if (acc.total + piece.total > max_total_dim) continue;
    acc = bundle_direct_sum(acc, piece);
  }
  std::uniform_int_distribution<int> entry(-1, 1);
  MatC t = zero_mat<Cyclo>(acc.total, acc.total);
  MatC tinv = zero_mat<Cyclo>(acc.total, acc.total);
  for (int x = 0; x < g.order(); ++x) {
    int d = acc.fiber_dim[size_t(x)];
    if (d == 0) continue;
    MatC lower = id_mat<Cyclo>(d), upper = id_mat<Cyclo>(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < i; ++j) lower(i, j) = Cyclo(entry(rng));
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) upper(i, j) = Cyclo(entry(rng));
    MatC blk = spmul<Cyclo>(lower, upper);
    t.block(acc.offset[size_t(x)], acc.offset[size_t(x)], d, d) = blk;
    tinv.block(acc.offset[size_t(x)], acc.offset[size_t(x)], d, d) = invert<Cyclo>(blk);
  }
  for (int h = 0; h < g.order(); ++h)
    acc.act[size_t(h)] = spmul<Cyclo>(tinv, spmul<Cyclo>(acc.act[size_t(h)], t));
  return acc;
}

MatC braiding_reduced(const EquivariantBundle& v, const EquivariantBundle& w) {
  EmbeddedBundle vw = reduced_tensor(v, w);
  EmbeddedBundle wv = reduced_tensor(w, v);
  MatC swap = zero_mat<Cyclo>(w.total * v.total, v.total * w.total);
  for (int a = 0; a < v.total; ++a)
    for (int b = 0; b < w.total; ++b) swap(b * v.total + a, a * w.total + b) = Cyclo(1);
  MatC linv = left_inverse<Cyclo>(wv.embedding);
  return spmul<Cyclo>(linv, spmul<Cyclo>(swap, vw.embedding));
}

MatC braiding_reduced_z(const EquivariantBundle& v, const EquivariantBundle& w) {
  const FiniteGroup& g = *v.group;
  if (!g.has_z()) throw Error(Error::Kind::ZMissing, "braiding_reduced_z needs z");
  EmbeddedBundle vw = reduced_tensor_z(v, w);
  EmbeddedBundle wv = reduced_tensor_z(w, v);
  int z = *g.z();
  MatC pv1 = Cyclo(Rational(1, 2)) * (id_mat<Cyclo>(v.total) - v.act[size_t(z)]);
  MatC pw1 = Cyclo(Rational(1, 2)) * (id_mat<Cyclo>(w.total) - w.act[size_t(z)]);
  MatC sign = id_mat<Cyclo>(v.total * w.total) - Cyclo(2) * kron<Cyclo>(pv1, pw1);
  MatC swap = zero_mat<Cyclo>(w.total * v.total, v.total * w.total);
  for (int a = 0; a < v.total; ++a)
    for (int b = 0; b < w.total; ++b) swap(b * v.total + a, a * w.total + b) = Cyclo(1);
  MatC linv = left_inverse<Cyclo>(wv.embedding);
  return spmul<Cyclo>(linv, spmul<Cyclo>(swap, spmul<Cyclo>(sign, vw.embedding)));
}

MatC ev_reduced(const EquivariantBundle& v) {
  const FiniteGroup& g = *v.group;
  EquivariantBundle dv = dual_reduced(v);
  MatC ev = zero_mat<Cyclo>(g.order(), reduced_tensor(dv, v).bundle.total);
  int col = 0;
  for (int b = 0; b < g.order(); ++b)
    for (int k = 0; k < dv.fiber_dim[size_t(b)]; ++k)
      for (int m = 0; m < v.fiber_dim[size_t(b)]; ++m) {
        if (k == m) ev(b, col) = Cyclo(1);
        ++col;
      }
  return ev;
}

MatC coev_reduced(const EquivariantBundle& v) {
  const FiniteGroup& g = *v.group;
  EquivariantBundle dv = dual_reduced(v);
  MatC coev = zero_mat<Cyclo>(reduced_tensor(v, dv).bundle.total, g.order());
  int row = 0;
  for (int b = 0; b < g.order(); ++b)
    for (int m = 0; m < v.fiber_dim[size_t(b)]; ++m)
      for (int k = 0; k < dv.fiber_dim[size_t(b)]; ++k) {
        if (m == k) coev(row, b) = Cyclo(1);
        ++row;
      }
  return coev;
}

MatC ev_reduced_z(const EquivariantBundle& v) {
  const FiniteGroup& g = *v.group;
  EquivariantBundle dv = dual_reduced(v);
  RedZData data = redz_assemble(dv, v);
  MatC ev = zero_mat<Cyclo>(g.order(), data.eb.bundle.total);
  for (const auto& blk : data.blocks) {
    if (blk.sigma != blk.tau) continue;  // ev is 0 on the odd part
    int col = blk.start;
    for (int u = 0; u < blk.cols_v; ++u)
      for (int t = 0; t < blk.cols_w; ++t) {
        Cyclo acc(0);
        const VecC colvec = data.eb.embedding.col(col);
        for (int a = 0; a < dv.total; ++a) {
          const Cyclo& phi = colvec(a * v.total + a);
          if (!(phi == Cyclo(0))) acc += phi;
        }
        ev(blk.base, col) = acc;
        ++col;
      }
  }
  return ev;
}

MatC coev_reduced_z(const EquivariantBundle& v) {
  const FiniteGroup& g = *v.group;
  if (!g.has_z()) throw Error(Error::Kind::ZMissing, "coev_reduced_z needs z");
  int z = *g.z();
  EquivariantBundle dv = dual_reduced(v);
  RedZData data = redz_assemble(v, dv);
  MatC pv1 = Cyclo(Rational(1, 2)) * (id_mat<Cyclo>(v.total) - v.act[size_t(z)]);
  MatC pv0 = Cyclo(Rational(1, 2)) * (id_mat<Cyclo>(v.total) + v.act[size_t(z)]);
  MatC dz = dv.act[size_t(z)];
  MatC pd1 = Cyclo(Rational(1, 2)) * (id_mat<Cyclo>(dv.total) - dz);
  MatC pd0 = Cyclo(Rational(1, 2)) * (id_mat<Cyclo>(dv.total) + dz);
  MatC even_proj = kron<Cyclo>(pv0, pd0);
  MatC odd_proj = kron<Cyclo>(pv1, pd1);
  MatC coev = zero_mat<Cyclo>(data.eb.bundle.total, g.order());
  for (int b = 0; b < g.order(); ++b) {
    VecC x = VecC::Zero(v.total * dv.total);
    for (int m = 0; m < v.fiber_dim[size_t(b)]; ++m) {
      int f = v.offset[size_t(b)] + m;
      x(f * dv.total + f) += Cyclo(1);
    }
    VecC xe = spmul<Cyclo>(even_proj, MatC(x));
    int bz = g.mul(b, z);
    VecC y = VecC::Zero(v.total * dv.total);
    for (int m = 0; m < v.fiber_dim[size_t(bz)]; ++m) {
      int f = v.offset[size_t(bz)] + m;
      y(f * dv.total + f) += Cyclo(1);
    }
    VecC yo = spmul<Cyclo>(odd_proj, MatC(y));
    coev.col(b) = spmul<Cyclo>(data.left_inv, MatC(VecC(xe + yo)));
  }
  return coev;
}

MatC pair_action(const EquivariantBundle& v, const EquivariantBundle& w, const SparseElem& pair,
                 const StructAlgebra& dg) {
  long d = dg.dim();
  int n = v.group->order();
  MatC out = zero_mat<Cyclo>(v.total * w.total, v.total * w.total);
  for (const auto& [p, c] : pair) {
    int a = int(p / d), b = int(p % d);
    int ga = a / n, ha = a % n;
    int gb = b / n, hb = b % n;
    MatC ma = spmul<Cyclo>(v.act[size_t(ga)], v.grading_projector(ha));
    MatC mb = spmul<Cyclo>(w.act[size_t(gb)], w.grading_projector(hb));
    out += Cyclo(c) * kron<Cyclo>(ma, mb);
  }
  return out;
}

EmbeddedBundle coproduct_pullback(const EquivariantBundle& v, const EquivariantBundle& w,
                                  const AlgebraMap& cop, const StructAlgebra& dg) {
  const FiniteGroup& g = *v.group;
  int n = g.order();
  // projector barDelta(1) on V (x) W
  MatC p1 = pair_action(v, w, cop.apply(dg.unit()), dg);
  EquivariantBundle out;
  out.group = &g;
  out.fiber_dim.assign(size_t(n), 0);
  std::vector<MatC> fiber_bases;
  for (int b = 0; b < n; ++b) {
    SparseElem delta_b{{g.identity() * n + b, Rational(1)}};
    MatC pb = pair_action(v, w, cop.apply(delta_b), dg);
    MatC basis = column_space_basis<Cyclo>(spmul<Cyclo>(pb, p1));
    out.fiber_dim[size_t(b)] = int(basis.cols());
    fiber_bases.push_back(std::move(basis));
  }
  finish_offsets(out);
  MatC embedding = zero_mat<Cyclo>(v.total * w.total, out.total);
  {
    int col = 0;
    for (int b = 0; b < n; ++b)
      for (Eigen::Index c = 0; c < fiber_bases[size_t(b)].cols(); ++c)
        embedding.col(col++) = fiber_bases[size_t(b)].col(c);
  }
  MatC linv = (out.total == 0) ? zero_mat<Cyclo>(0, v.total * w.total)
                               : left_inverse<Cyclo>(embedding);
  out.act.assign(size_t(n), MatC());
  for (int h = 0; h < n; ++h) {
    SparseElem gfull;
    for (int k = 0; k < n; ++k) gfull.emplace_back(h * n + k, Rational(1));
    MatC ah = pair_action(v, w, cop.apply(sparse_normalize(std::move(gfull))), dg);
    out.act[size_t(h)] = spmul<Cyclo>(linv, spmul<Cyclo>(ah, embedding));
  }
  EmbeddedBundle eb;
  eb.bundle = std::move(out);
  eb.embedding = std::move(embedding);
  return eb;
}

bool embedded_identity_iso(const EmbeddedBundle& a, const EmbeddedBundle& b) {
  if (a.embedding.rows() != b.embedding.rows()) return false;
  if (a.bundle.total != b.bundle.total) return false;
  if (a.bundle.total == 0) return true;
  if (!same_span<Cyclo>(a.embedding, b.embedding)) return false;
  // the ambient identity as a map a -> b in the two bases
  MatC linv_b = left_inverse<Cyclo>(b.embedding);
  MatC phi = spmul<Cyclo>(linv_b, a.embedding);
  if (rank_of<Cyclo>(phi) != a.bundle.total) return false;
  for (int h = 0; h < a.bundle.group->order(); ++h) {
    if (spmul<Cyclo>(phi, a.bundle.act[size_t(h)]) !=
        spmul<Cyclo>(b.bundle.act[size_t(h)], phi))
      return false;
  }
  // gradings must match through the identity: fiberwise spans agree
  for (int x = 0; x < a.bundle.group->order(); ++x) {
    MatC sa = zero_mat<Cyclo>(a.embedding.rows(), a.bundle.fiber_dim[size_t(x)]);
    for (int k = 0; k < a.bundle.fiber_dim[size_t(x)]; ++k)
      sa.col(k) = a.embedding.col(a.bundle.offset[size_t(x)] + k);
    MatC sb = zero_mat<Cyclo>(b.embedding.rows(), b.bundle.fiber_dim[size_t(x)]);
    for (int k = 0; k < b.bundle.fiber_dim[size_t(x)]; ++k)
      sb.col(k) = b.embedding.col(b.bundle.offset[size_t(x)] + k);
    if (!same_span<Cyclo>(sa, sb)) return false;
  }
  return true;
}

std::string bundle_to_json(const EquivariantBundle& v) {
  nlohmann::json j;
  j["group"] = v.group->name();
  j["fibers"] = nlohmann::json::object();
  for (int x = 0; x < v.group->order(); ++x)
    if (v.fiber_dim[size_t(x)] > 0) j["fibers"][std::to_string(x)] = v.fiber_dim[size_t(x)];
  j["action"] = nlohmann::json::object();
  for (int h = 0; h < v.group->order(); ++h) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < v.total; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int jj = 0; jj < v.total; ++jj) {
        const Cyclo& c = v.act[size_t(h)](i, jj);
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& r : c.coeffs())
          coeffs.push_back(nlohmann::json::array({r.num_long(), r.den_long()}));
        row.push_back(nlohmann::json{{"M", c.conductor()}, {"coeffs", coeffs}});
      }
      rows.push_back(row);
    }
    j["action"][std::to_string(h)] = rows;
  }
  return j.dump();
}

EquivariantBundle bundle_from_json(const std::string& text, const FiniteGroup& g) {
  nlohmann::json j = nlohmann::json::parse(text);
  EquivariantBundle v;
  v.group = &g;
  v.fiber_dim.assign(size_t(g.order()), 0);
  for (const auto& [key, val] : j.at("fibers").items())
    v.fiber_dim[size_t(std::stoi(key))] = val.get<int>();
  finish_offsets(v);
  v.act.assign(size_t(g.order()), MatC());
  for (int h = 0; h < g.order(); ++h) {
    const auto& rows = j.at("action").at(std::to_string(h));
    MatC m(v.total, v.total);
    for (int i = 0; i < v.total; ++i)
      for (int jj = 0; jj < v.total; ++jj) {
        const auto& c = rows.at(size_t(i)).at(size_t(jj));
        std::vector<Rational> coeffs;
        for (const auto& p : c.at("coeffs"))
          coeffs.push_back(Rational(p.at(0).get<long>(), p.at(1).get<long>()));
        m(i, jj) = Cyclo::from_coeffs(c.at("M").get<long>(), std::move(coeffs));
      }
    v.act[size_t(h)] = std::move(m);
  }
  validate_bundle(v);
  return v;
}

}  // namespace redten
