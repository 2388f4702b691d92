#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "redten/oracle.hpp"

using namespace redten;

namespace {
std::shared_ptr<Zoo> zoo = builtin_zoo();

long cond(const std::string& name) {
  return session_conductor(zoo->group(name), zoo->irreps(name));
}
}  // namespace

TEST_CASE("evaluate is compositional and shape-checked") {
  const FiniteGroup& g = zoo->group("Z2");
  EquivariantBundle unit = unit_reduced(g);
  Composite c;
  c.group = &g;
  c.inputs = {OracleFactor::of_bundle(unit)};
  c.steps.push_back({Step::Kind::InsertCoevKG, 0});
  c.steps.push_back({Step::Kind::Swap, 1});
  Evaluation first = evaluate(c);

  Composite c2;
  c2.group = &g;
  c2.inputs = first.outputs;
  c2.steps.push_back({Step::Kind::Swap, 1});
  c2.steps.push_back({Step::Kind::EvKG, 0});
  Evaluation second = evaluate(c2);

  Composite whole;
  whole.group = &g;
  whole.inputs = c.inputs;
  whole.steps = c.steps;
  whole.steps.insert(whole.steps.end(), c2.steps.begin(), c2.steps.end());
  Evaluation all = evaluate(whole);
  CHECK(all.matrix == spmul<Cyclo>(second.matrix, first.matrix));

  // swap . swap = id
  Composite sw2;
  sw2.group = &g;
  sw2.inputs = first.outputs;
  sw2.steps.push_back({Step::Kind::Swap, 0});
  sw2.steps.push_back({Step::Kind::Swap, 0});
  CHECK(evaluate(sw2).matrix == id_mat<Cyclo>(first.matrix.rows()));

  // ill-typed composites report the step index
  Composite bad;
  bad.group = &g;
  bad.inputs = c.inputs;
  bad.steps.push_back({Step::Kind::EvKG, 0});
  CHECK_THROWS_WITH_AS(evaluate(bad), doctest::Contains("step 0"), Error);
}

TEST_CASE("ev . coev on k[G] closes to |G|") {
  const FiniteGroup& g = zoo->group("S3");
  Composite c;
  c.group = &g;
  c.steps.push_back({Step::Kind::InsertCoevKG, 0});
  c.steps.push_back({Step::Kind::EvKG, 0});
  Evaluation ev = evaluate(c);
  CHECK(ev.matrix.rows() == 1);
  CHECK(ev.matrix(0, 0) == Cyclo(g.order()));
}

TEST_CASE("delta action through the half-braiding recovers the grading") {
  for (const std::string& name : {"S3", "Z4"}) {
    const FiniteGroup& g = zoo->group(name);
    std::mt19937_64 rng(71);
    EquivariantBundle v = random_bundle(g, *zoo, cond(name), rng);
    for (int x = 0; x < g.order(); ++x)
      CHECK(delta_action_via_halfbraiding(v, x) == v.grading_projector(x));
  }
}

TEST_CASE("Q projector equals the matched-grading projector") {
  const FiniteGroup& g = zoo->group("S3");
  std::mt19937_64 rng(73);
  EquivariantBundle v = random_bundle(g, *zoo, cond("S3"), rng, 4);
  EquivariantBundle w = random_bundle(g, *zoo, cond("S3"), rng, 4);
  MatC q = q_projector(v, w);
  MatC expect = zero_mat<Cyclo>(v.total * w.total, v.total * w.total);
  for (int iv = 0; iv < v.total; ++iv)
    for (int iw = 0; iw < w.total; ++iw)
      if (v.fiber_of(iv) == w.fiber_of(iw))
        expect(iv * w.total + iw, iv * w.total + iw) = Cyclo(1);
  CHECK(q == expect);
}

TEST_CASE("Q projector on the unit pair has the matched rank") {
  const FiniteGroup& z2 = zoo->group("Z2");
  EquivariantBundle unit = unit_reduced(z2);
  MatC q = q_projector(unit, unit);
  CHECK(rank_of<Cyclo>(q) == 2);
  CHECK(spmul<Cyclo>(q, q) == q);
}

TEST_CASE("Q projector full report on random pairs") {
  for (const std::string& name : {"Z3", "S3"}) {
    const FiniteGroup& g = zoo->group(name);
    std::mt19937_64 rng(79);
    for (int t = 0; t < 3; ++t) {
      EquivariantBundle v = random_bundle(g, *zoo, cond(name), rng, 4);
      EquivariantBundle w = random_bundle(g, *zoo, cond(name), rng, 4);
      QReport rep = q_projector_check(v, w, false);
      CHECK(rep.idempotent);
      CHECK(rep.equivariant);
      CHECK(rep.graded_dims_match);
    }
  }
}

TEST_CASE("super Q projector lands at g z^tau") {
  for (const std::string& name : {"Z4", "Q8"}) {
    const FiniteGroup& g = zoo->group(name);
    std::mt19937_64 rng(83);
    for (int t = 0; t < 3; ++t) {
      EquivariantBundle v = random_bundle(g, *zoo, cond(name), rng, 4);
      EquivariantBundle w = random_bundle(g, *zoo, cond(name), rng, 4);
      QReport rep = q_projector_check(v, w, true);
      CHECK(rep.idempotent);
      CHECK(rep.equivariant);
      CHECK(rep.graded_dims_match);
    }
  }
}

TEST_CASE("super Q on matched odd fibers is supported at gz") {
  const FiniteGroup& z4 = zoo->group("Z4");
  auto s = simples(z4, *zoo, cond("Z4"));
  const EquivariantBundle* odd = nullptr;
  int support = -1;
  for (const auto& sb : s) {
    ParitySplit ps = parity_split(sb.bundle);
    for (int x = 0; x < z4.order(); ++x)
      if (ps.odd_dim[size_t(x)] == sb.bundle.fiber_dim[size_t(x)] && ps.odd_dim[size_t(x)] > 0) {
        odd = &sb.bundle;
        support = x;
      }
    if (odd) break;
  }
  REQUIRE(odd);
  MatC q = q_projector_super(*odd, *odd);
  // rank 1, and the image sits in the (gz)-graded part of the z-twisted product
  CHECK(rank_of<Cyclo>(q) == 1);
  StructAlgebra dg = drinfeld_double(z4);
  AlgebraMap copz = coproduct_bar_z(z4, dg);
  MatC image = column_space_basis<Cyclo>(q);
  int gz = z4.mul(support, *z4.z());
  for (int b = 0; b < z4.order(); ++b) {
    SparseElem db{{z4.identity() * z4.order() + b, Rational(1)}};
    MatC pb = pair_action(*odd, *odd, copz.apply(db), dg);
    int rk = int(rank_of<Cyclo>(MatC(spmul<Cyclo>(pb, image))));
    CHECK(rk == (b == gz ? 1 : 0));
  }
}

TEST_CASE("pivotal suite on the unit bundle over S3 at conductor 24") {
  const FiniteGroup& s3 = zoo->group("S3");
  CHECK(session_conductor(s3, zoo->irreps("S3")) == 24);
  EquivariantBundle unit = unit_reduced(s3);
  PivotalReport rep = pivotal_checks(unit, *zoo);
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.pass);
}

TEST_CASE("pivotal suite on random bundles") {
  for (const std::string& name : {"Z2", "S3"}) {
    std::mt19937_64 rng(89);
    EquivariantBundle v = random_bundle(zoo->group(name), *zoo, cond(name), rng, 4);
    PivotalReport rep = pivotal_checks(v, *zoo);
    for (const auto& f : rep.failures) MESSAGE(name, ": ", f);
    CHECK(rep.pass);
  }
}

TEST_CASE("dropping the dimension normalization scales the roundtrip by D") {
  const FiniteGroup& s3 = zoo->group("S3");
  EquivariantBundle unit = unit_reduced(s3);
  MatC bad = pivotal_left_roundtrip(unit, *zoo, true);
  CHECK(bad == MatC(Cyclo(s3.order()) * id_mat<Cyclo>(unit.total)));
}

TEST_CASE("combine identity over S3 and Z4") {
  {
    const IrrepZoo& iz = zoo->irreps("S3");
    long M = cond("S3");
    GModule sign = lift_module(iz.irreps[1].module, M);
    GModule std2 = lift_module(iz.irreps[2].module, M);
    CHECK(combine_check({&sign}, iz, M));
    CHECK(combine_check({&sign, &sign}, iz, M));
    CHECK(combine_check({&std2}, iz, M));
    CHECK(combine_check({&sign, &std2}, iz, M));
    CHECK(combine_check({&std2, &std2}, iz, M));
  }
  {
    const IrrepZoo& iz = zoo->irreps("Z4");
    long M = cond("Z4");
    GModule chi1 = lift_module(iz.irreps[1].module, M);
    GModule chi2 = lift_module(iz.irreps[2].module, M);
    CHECK(combine_check({&chi1, &chi2}, iz, M));
    CHECK(combine_check({&chi1, &chi1, &chi2}, iz, M));
  }
}

TEST_CASE("sliding lemma") {
  {
    const IrrepZoo& iz = zoo->irreps("S3");
    long M = cond("S3");
    GModule triv = lift_module(iz.trivial().module, M);
    GModule sign = lift_module(iz.irreps[1].module, M);
    GModule std2 = lift_module(iz.irreps[2].module, M);
    CHECK(sliding_check(triv, iz, M));
    CHECK(sliding_check(sign, iz, M));
    CHECK(sliding_check(std2, iz, M));
  }
  {
    const IrrepZoo& iz = zoo->irreps("Z4");
    long M = cond("Z4");
    GModule chi1 = lift_module(iz.irreps[1].module, M);
    CHECK(sliding_check(chi1, iz, M));
  }
  // closed regular loop has the same trace in both colorings
  auto [a, b] = regular_loop_traces(zoo->irreps("S3"), cond("S3"));
  CHECK(a == b);
  CHECK(a == Cyclo(6));
}

TEST_CASE("dual-basis naturality") {
  const IrrepZoo& iz = zoo->irreps("S3");
  long M = cond("S3");
  GModule sign = lift_module(iz.irreps[1].module, M);
  GModule std2 = lift_module(iz.irreps[2].module, M);
  GModule w1 = tensor(std2, std2);  // contains sign with multiplicity 1

  // f : sign -> std (x) std, a nonzero intertwiner
  auto basis = intertwiner_space(sign, w1);
  REQUIRE(basis.size() == 1);
  CHECK(naturality_check({&sign, &std2, &std2}, w1, basis[0]));
  // and with a zero map, both sides vanish consistently
  MatC zero = zero_mat<Cyclo>(w1.dim, sign.dim);
  CHECK(naturality_check({&sign, &std2, &std2}, w1, zero));
}

TEST_CASE("U_S equivariance through the dualized half-braiding") {
  for (const std::string& name : {"Z4", "S3", "Q8"}) {
    const FiniteGroup& g = zoo->group(name);
    std::mt19937_64 rng(97);
    for (int t = 0; t < 2; ++t) {
      EquivariantBundle v = random_bundle(g, *zoo, cond(name), rng, 4);
      CHECK(u_equivariance_check(v));
    }
    CHECK(u_equivariance_check(unit_reduced(g)));
  }
  // a bundle concentrated on a 3-cycle class moves to the inverse class
  const FiniteGroup& s3 = zoo->group("S3");
  auto s = simples(s3, *zoo, cond("S3"));
  for (const auto& sb : s) {
    if (s3.element_order(sb.class_rep) != 3) continue;
    EquivariantBundle d = dual_reduced(dual_convolution(sb.bundle));
    for (int x = 0; x < s3.order(); ++x)
      CHECK(d.fiber_dim[size_t(x)] == sb.bundle.fiber_dim[size_t(s3.inv(x))]);
    break;
  }
}

TEST_CASE("regular-object averaging projector is idempotent") {
  for (const std::string& name : {"S3", "Z4"}) {
    const FiniteGroup& g = zoo->group(name);
    std::mt19937_64 rng(101);
    EquivariantBundle v = random_bundle(g, *zoo, cond(name), rng, 5);
    MatC p = regular_projector(v);
    CHECK(spmul<Cyclo>(p, p) == p);
  }
}

TEST_CASE("z = e: the super Q pipeline coincides with the plain one") {
  FiniteGroup z2e({{0, 1}, {1, 0}}, 0, "Z2e");
  EquivariantBundle unit = unit_reduced(z2e);
  EquivariantBundle ind = induction_I(regular_module(z2e, 4));
  CHECK(q_projector_super(unit, unit) == q_projector(unit, unit));
  CHECK(q_projector_super(ind, unit) == q_projector(ind, unit));
  CHECK(q_projector_super(ind, ind) == q_projector(ind, ind));
}

TEST_CASE("the R-matrix element realizes the half-braiding as swap . R") {
  const FiniteGroup& g = zoo->group("S3");
  std::mt19937_64 rng(107);
  EquivariantBundle v = random_bundle(g, *zoo, cond("S3"), rng, 3);
  EquivariantBundle w = random_bundle(g, *zoo, cond("S3"), rng, 3);
  StructAlgebra dg = drinfeld_double(g);
  // gamma_{V,W} from the oracle pipeline
  Composite c;
  c.group = &g;
  c.inputs = {OracleFactor::of_bundle(v), OracleFactor::of_bundle(w)};
  c.steps.push_back({Step::Kind::HalfBraid, 0});
  MatC braid = evaluate(c).matrix;
  // swap . (R acting componentwise), with R = sum_g (g x delta_*) (x) (e x delta_g)
  MatC r_act = pair_action(v, w, r_matrix(g), dg);
  MatC swap = zero_mat<Cyclo>(w.total * v.total, v.total * w.total);
  for (int a = 0; a < v.total; ++a)
    for (int b = 0; b < w.total; ++b) swap(b * v.total + a, a * w.total + b) = Cyclo(1);
  CHECK(braid == spmul<Cyclo>(swap, r_act));
}
