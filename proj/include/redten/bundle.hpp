#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "redten/gmodule.hpp"
#include "redten/group.hpp"
#include "redten/struct_algebra.hpp"
#include "redten/zoo.hpp"

namespace redten {

// G-equivariant bundle over G (a D(G)-module): a G-graded vector space with
// action matrices moving the fiber over g to the fiber over h g h^{-1}.
// Flat coordinates are fiber-major: index = offset[g] + k with k < dim(V_g).
struct EquivariantBundle {
  const FiniteGroup* group = nullptr;
  std::vector<int> fiber_dim;  // per element
  std::vector<int> offset;     // prefix sums
  int total = 0;
  std::vector<MatC> act;       // per element, total x total, blockwise

  int fiber_of(int flat) const;
  MatC grading_projector(int g) const;   // projection onto the fiber over g
  MatC action_of(const SparseElem& x, const StructAlgebra& dg) const;  // D(G)-element action
  bool is_zero() const { return total == 0; }
  std::vector<int> graded_dims() const { return fiber_dim; }
};

void validate_bundle(const EquivariantBundle& v);
void finish_offsets(EquivariantBundle& v);

// Parity data for supergroup bundles: bases of the z-eigenspaces per fiber,
// in global flat coordinates (columns of `even[g]` span V_g^0).
struct ParitySplit {
  std::vector<MatC> even, odd;  // per element; total x (parity dim)
  std::vector<int> even_dim, odd_dim;
};
ParitySplit parity_split(const EquivariantBundle& v);

// A bundle together with its realization inside an ambient coordinate space
// (columns of `embedding` express the bundle basis in ambient coordinates).
struct EmbeddedBundle {
  EquivariantBundle bundle;
  MatC embedding;
};

GModule forget_grading(const EquivariantBundle& v, long conductor);

EquivariantBundle zero_bundle(const FiniteGroup& g);
EquivariantBundle unit_reduced(const FiniteGroup& g);       // k at every fiber, conjugation
EquivariantBundle unit_convolution(const FiniteGroup& g);   // k at the identity

// (V (x) W)_g = sum_h V_{gh} (x) W_{h^-1}, diagonal action. The embedding
// maps conv coordinates into Kronecker coordinates of V (x) W.
EmbeddedBundle convolution_tensor(const EquivariantBundle& v, const EquivariantBundle& w);

// (V (x)bar W)_g = V_g (x) W_g, diagonal action; embedded in V (x) W.
EmbeddedBundle reduced_tensor(const EquivariantBundle& v, const EquivariantBundle& w);

// z-twisted fiberwise product (V (x)_z W)_g = sum_{s,t} V^s_{g z^t} (x)
// W^t_{g z^s}; requires z. Embedded in V (x) W.
EmbeddedBundle reduced_tensor_z(const EquivariantBundle& v, const EquivariantBundle& w);

EquivariantBundle dual_reduced(const EquivariantBundle& v);      // (V^vee)_g = (V_g)^*
EquivariantBundle dual_convolution(const EquivariantBundle& v);  // (V^*)_g = (V_{g^-1})^*

// Constant bundle with fiber A; the two-sided adjoint of the forgetful
// functor, realized on bundles.
EquivariantBundle induction_I(const GModule& a);

// dim Hom(I(forget V), V) >= 1; throws NotNonzero on the zero bundle.
bool verify_dominance(const EquivariantBundle& v, long conductor);

EquivariantBundle us_action(const EquivariantBundle& v);  // fiber over g becomes V_{g^-1}

// Grading mixer for the supergroup case: Lambda(V)_g = V_g^0 + V_{gz}^1,
// same underlying space and G-action. `embedding` expresses the new basis in
// V's own coordinates.
EmbeddedBundle lambda_pullback(const EquivariantBundle& v);

// Equivariant grading-preserving maps V -> W (morphisms of D(G)-modules), as
// total x total matrices.
std::vector<MatC> bundle_hom(const EquivariantBundle& v, const EquivariantBundle& w);
int bundle_hom_dim(const EquivariantBundle& v, const EquivariantBundle& w);

// Explicit certified isomorphism: graded (and parity, when z is present)
// dimensions agree and an invertible equivariant map exists. Never judged by
// dimensions alone.
bool certified_iso(const EquivariantBundle& v, const EquivariantBundle& w, std::uint64_t seed);

struct SimpleBundle {
  EquivariantBundle bundle;
  int class_rep = 0;
  std::string centralizer_label;  // irrep label of Z(class_rep)
  std::string name;
};

// Simple D(G)-modules: induced from centralizer irreps, graded through the
// conjugation orbit. Requires the zoo's centralizer cross-references.
std::vector<SimpleBundle> simples(const FiniteGroup& g, const Zoo& zoo, long conductor);

enum class ProductKind { Convolution, Reduced, ReducedZ };

struct FusionTable {
  std::vector<std::string> labels;
  std::vector<std::vector<std::vector<int>>> mult;  // N[a][b][c]
};
FusionTable fusion_table(const std::vector<SimpleBundle>& simple_list, ProductKind kind);

EquivariantBundle product_bundle(const EquivariantBundle& v, const EquivariantBundle& w,
                                 ProductKind kind);

// Seeded random bundle: random multiplicities of simples, scrambled by a
// random block-diagonal unimodular change of basis per fiber.
EquivariantBundle random_bundle(const FiniteGroup& g, const Zoo& zoo, long conductor,
                                std::mt19937_64& rng, int max_total_dim = 6);

// Braidings on the two fiberwise products: plain swap for (x)bar, the Koszul
// signed swap for (x)_z. Both as matrices between the embedded products.
MatC braiding_reduced(const EquivariantBundle& v, const EquivariantBundle& w);
MatC braiding_reduced_z(const EquivariantBundle& v, const EquivariantBundle& w);

// Evaluation / coevaluation for the reduced duals, as matrices
//   ev : (V^vee (x)bar V).total -> |G|      (target: unit bundle)
//   coev : |G| -> (V (x)bar V^vee).total
// and the z-twisted versions (ev vanishes on the odd part).
MatC ev_reduced(const EquivariantBundle& v);
MatC coev_reduced(const EquivariantBundle& v);
MatC ev_reduced_z(const EquivariantBundle& v);
MatC coev_reduced_z(const EquivariantBundle& v);

// Action of a pair element of D(G) (x) D(G) on V (x) W in Kronecker
// coordinates.
MatC pair_action(const EquivariantBundle& v, const EquivariantBundle& w, const SparseElem& pair,
                 const StructAlgebra& dg);

// The coproduct-side realization of a fiberwise product: the image of
// barDelta(1) (or barDelta_z(1)) inside V (x) W, with the module structure
// pulled back along the coproduct. Graded basis adapted to the
// barDelta(delta_b) projectors; `embedding` lives in Kronecker coordinates.
EmbeddedBundle coproduct_pullback(const EquivariantBundle& v, const EquivariantBundle& w,
                                  const AlgebraMap& cop, const StructAlgebra& dg);

// Explicit equivariant isomorphism between two bundles embedded in the same
// ambient space, implemented by the identity of the ambient space. Returns
// false when the fiberwise spans differ or the change of coordinates fails to
// intertwine the actions.
bool embedded_identity_iso(const EmbeddedBundle& a, const EmbeddedBundle& b);

std::string bundle_to_json(const EquivariantBundle& v);
EquivariantBundle bundle_from_json(const std::string& text, const FiniteGroup& g);

}  // namespace redten
