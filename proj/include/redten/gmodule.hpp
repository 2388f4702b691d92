#pragma once

#include <string>
#include <vector>

#include "redten/cyclo.hpp"
#include "redten/group.hpp"
#include "redten/linalg.hpp"

namespace redten {

using MatC = Mat<Cyclo>;
using VecC = Vec<Cyclo>;

// Finite-dimensional representation of G by exact matrices, stored for all
// elements (groups here are tiny; lookups dominate).
struct GModule {
  const FiniteGroup* group = nullptr;
  int dim = 0;
  std::vector<MatC> rho;  // size |G|, each dim x dim

  const MatC& act(int g) const { return rho[size_t(g)]; }
};

// Validates rho(e) = I and rho(gh) = rho(g) rho(h) on all pairs.
void validate_gmodule(const GModule& v);

GModule tensor(const GModule& v, const GModule& w);
GModule dual(const GModule& v);
GModule direct_sum(const GModule& v, const GModule& w);
GModule trivial_module(const FiniteGroup& g, long conductor);
GModule regular_module(const FiniteGroup& g, long conductor);       // g . e_h = e_{gh}
GModule function_module(const FiniteGroup& g, long conductor);      // g . delta_a = delta_{ga}
GModule conjugation_module(const FiniteGroup& g, long conductor);   // g . e_h = e_{g h g^-1}

// Exact basis of Hom_G(v, w) via the null space of the intertwining
// constraints; its size is the fusion multiplicity.
std::vector<MatC> intertwiner_space(const GModule& v, const GModule& w);

// Basis of the invariant vectors of v1 (x) ... (x) vn.
MatC invariant_vectors(const std::vector<const GModule*>& factors);

struct DualBases {
  MatC basis;       // columns: invariants of V1...Vn
  MatC dual_basis;  // columns: invariants of Vn*...V1*, ev-dual to `basis`
};

// Bases of <V1,...,Vn> and <Vn*,...,V1*> dual under the nested evaluation
// pairing (the pairing matrix becomes the identity). Throws DegeneratePairing
// if the pairing degenerates (a bug: it is nondegenerate in a fusion
// category).
DualBases invariants_and_dual_basis(const std::vector<const GModule*>& factors);

// Nested evaluation pairing <phi, psi> for phi in V1...Vn, psi in Vn*...V1*.
Cyclo nested_pairing(const std::vector<int>& dims, const VecC& phi, const VecC& psi);

struct Irrep {
  std::string label;
  GModule module;
};

struct IrrepZoo {
  const FiniteGroup* group = nullptr;
  std::vector<Irrep> irreps;
  int trivial_index = 0;

  int max_dim() const;
  const Irrep& trivial() const { return irreps[size_t(trivial_index)]; }
};

struct ZooReport {
  bool pass = true;
  std::vector<std::string> failures;
};

// Revalidates all IrrepZoo invariants: sum of squares, Schur orthogonality,
// representation axioms. Reports the failures with witnesses instead of
// throwing.
ZooReport zoo_validate(const IrrepZoo& zoo);

// Session conductor: lcm(exponent(G), 4|G|, 4*max irrep dim).
long session_conductor(const FiniteGroup& g, const IrrepZoo& zoo);

// Lifts every matrix entry to the given conductor.
IrrepZoo lift_zoo(const IrrepZoo& zoo, long conductor);
GModule lift_module(const GModule& v, long conductor);

// Fourier injections/projections between k[G] with conjugation action and the
// blocks X_i (x) X_i^* of its Artin-Wedderburn decomposition.
struct FourierBlocks {
  std::vector<MatC> proj;  // pi_i : k[G] -> X_i (x) X_i^*
  std::vector<MatC> inj;   // iota_i : X_i (x) X_i^* -> k[G]
};
FourierBlocks fourier_blocks(const FiniteGroup& g, const IrrepZoo& zoo, long conductor);

}  // namespace redten
