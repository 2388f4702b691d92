#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "redten/gmodule.hpp"
#include "redten/zoo.hpp"

using namespace redten;

namespace {
std::shared_ptr<Zoo> zoo = builtin_zoo();

const GModule& irrep(const std::string& g, const std::string& label) {
  for (const auto& ir : zoo->irreps(g).irreps)
    if (ir.label == label) return ir.module;
  throw std::runtime_error("no such irrep");
}
}  // namespace

TEST_CASE("zoo validates") {
  for (const auto& name : zoo->group_names()) {
    ZooReport rep = zoo_validate(zoo->irreps(name));
    if (!rep.pass)
      for (auto& f : rep.failures) MESSAGE(name, ": ", f);
    CHECK(rep.pass);
  }
}

TEST_CASE("a zoo with a repeated irrep fails validation") {
  IrrepZoo bad = zoo->irreps("Z2");
  bad.irreps.push_back({"dup", bad.irreps[1].module});
  ZooReport rep = zoo_validate(bad);
  CHECK(!rep.pass);
}

TEST_CASE("tensor, dual, direct sum") {
  const GModule& sign = irrep("S3", "sign");
  const GModule& triv = irrep("S3", "triv");
  const GModule& std2 = irrep("S3", "std");

  GModule ss = tensor(sign, sign);
  CHECK(ss.dim == 1);
  for (int x = 0; x < 6; ++x) CHECK(ss.act(x) == triv.act(x));

  GModule dt = dual(triv);
  for (int x = 0; x < 6; ++x) CHECK(dt.act(x) == triv.act(x));

  CHECK(tensor(std2, std2).dim == 4);
  CHECK(direct_sum(std2, sign).dim == 3);
  validate_gmodule(tensor(std2, std2));
  validate_gmodule(dual(std2));
}

TEST_CASE("intertwiner spaces") {
  const FiniteGroup& s3 = zoo->group("S3");
  GModule reg = regular_module(s3, 12);
  CHECK(intertwiner_space(reg, reg).size() == 6);  // sum of d_i^2

  CHECK(intertwiner_space(irrep("S3", "triv"), irrep("S3", "sign")).empty());
  for (const auto& ir : zoo->irreps("S3").irreps)
    CHECK(intertwiner_space(ir.module, ir.module).size() == 1);
}

TEST_CASE("regular module decomposes with the right multiplicities") {
  const FiniteGroup& s3 = zoo->group("S3");
  GModule reg = regular_module(s3, 12);
  for (const auto& ir : zoo->irreps("S3").irreps)
    CHECK(int(intertwiner_space(ir.module, reg).size()) == ir.module.dim);
}

TEST_CASE("invariants and dual bases") {
  const GModule& sign = irrep("S3", "sign");
  const GModule& triv = irrep("S3", "triv");
  const GModule& std2 = irrep("S3", "std");

  // <trivial> is the scalar line, self-dual
  DualBases db1 = invariants_and_dual_basis({&triv});
  CHECK(db1.basis.cols() == 1);
  CHECK(nested_pairing({1}, db1.basis.col(0), db1.dual_basis.col(0)) == Cyclo(1));

  // <X, X*> for irreducible X
  GModule std2d = dual(std2);
  DualBases db2 = invariants_and_dual_basis({&std2, &std2d});
  CHECK(db2.basis.cols() == 1);
  CHECK(nested_pairing({2, 2}, db2.basis.col(0), db2.dual_basis.col(0)) == Cyclo(1));

  // <sign, sign> is 1-dimensional
  DualBases db3 = invariants_and_dual_basis({&sign, &sign});
  CHECK(db3.basis.cols() == 1);

  // a bigger space: <std, std, std> has dimension 1 for S3
  DualBases db4 = invariants_and_dual_basis({&std2, &std2, &std2});
  for (Eigen::Index a = 0; a < db4.basis.cols(); ++a)
    for (Eigen::Index b = 0; b < db4.basis.cols(); ++b)
      CHECK(nested_pairing({2, 2, 2}, db4.basis.col(a), db4.dual_basis.col(b)) ==
            (a == b ? Cyclo(1) : Cyclo(0)));
}

TEST_CASE("fourier blocks resolve the conjugation module") {
  for (const std::string& name : {"S3", "Z4", "Q8"}) {
    const FiniteGroup& g = zoo->group(name);
    const IrrepZoo& iz = zoo->irreps(name);
    long M = session_conductor(g, iz);
    FourierBlocks fb = fourier_blocks(g, iz, M);
    MatC total = zero_mat<Cyclo>(g.order(), g.order());
    for (size_t i = 0; i < fb.proj.size(); ++i) {
      for (size_t j = 0; j < fb.inj.size(); ++j) {
        MatC comp = fb.proj[i] * fb.inj[j];
        if (i == j)
          CHECK(comp == id_mat<Cyclo>(comp.rows()));
        else
          CHECK(comp == zero_mat<Cyclo>(comp.rows(), comp.cols()));
      }
      total += fb.inj[i] * fb.proj[i];
    }
    CHECK(total == id_mat<Cyclo>(g.order()));
    // the projections intertwine conjugation with rho (x) rho^*
    GModule conj = conjugation_module(g, M);
    const GModule x0 = lift_module(iz.irreps.back().module, M);
    GModule xx = tensor(x0, dual(x0));
    size_t last = fb.proj.size() - 1;
    for (int h = 0; h < g.order(); ++h)
      CHECK(MatC(fb.proj[last] * conj.act(h)) == MatC(xx.act(h) * fb.proj[last]));
  }
}

TEST_CASE("session conductor values") {
  CHECK(session_conductor(zoo->group("S3"), zoo->irreps("S3")) == 24);
  CHECK(session_conductor(zoo->group("Z2"), zoo->irreps("Z2")) == 8);
  CHECK(session_conductor(zoo->group("Q8"), zoo->irreps("Q8")) == 32);
}

TEST_CASE("zoo JSON round trip") {
  std::string text = zoo_to_json(*zoo);
  auto loaded = zoo_from_json(text);
  CHECK(loaded->group_names() == zoo->group_names());
  for (const auto& name : loaded->group_names()) {
    CHECK(loaded->group(name).order() == zoo->group(name).order());
    CHECK(loaded->irreps(name).irreps.size() == zoo->irreps(name).irreps.size());
    CHECK(loaded->centralizers(name).size() == zoo->centralizers(name).size());
  }
  const GModule& q2 = [&]() -> const GModule& {
    for (const auto& ir : loaded->irreps("Q8").irreps)
      if (ir.label == "twodim") return ir.module;
    throw std::runtime_error("missing");
  }();
  CHECK(q2.act(2)(0, 0) == Cyclo::zeta(4));
}

TEST_CASE("zoo file round trip through disk") {
  std::string path = "test_zoo_roundtrip.json";
  save_zoo_file(*zoo, path);
  auto loaded = load_zoo_file(path);
  CHECK(loaded->group_names() == zoo->group_names());
  CHECK(loaded->group("Q8").has_z());
  std::remove(path.c_str());
}
