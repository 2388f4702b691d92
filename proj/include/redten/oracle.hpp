#pragma once

#include <optional>
#include <string>
#include <vector>

#include "redten/bundle.hpp"
#include "redten/gmodule.hpp"
#include "redten/struct_algebra.hpp"
#include "redten/zoo.hpp"

namespace redten {

// One wire of a string-diagram state. Every factor knows its G-action (for
// half-braiding and Koszul steps); bundle factors also carry a grading.
struct OracleFactor {
  enum class Kind { KG, FG, Bundle, DualBundle, Module, DualModule };
  Kind kind = Kind::KG;
  int dim = 0;
  const EquivariantBundle* bundle = nullptr;
  const GModule* module = nullptr;  // the underlying module for Module/DualModule

  static OracleFactor kg(int order) { return {Kind::KG, order, nullptr, nullptr}; }
  static OracleFactor fg(int order) { return {Kind::FG, order, nullptr, nullptr}; }
  static OracleFactor of_bundle(const EquivariantBundle& b) {
    return {Kind::Bundle, b.total, &b, nullptr};
  }
  static OracleFactor dual_of_bundle(const EquivariantBundle& b) {
    return {Kind::DualBundle, b.total, &b, nullptr};
  }
  static OracleFactor of_module(const GModule& m) { return {Kind::Module, m.dim, nullptr, &m}; }
  static OracleFactor dual_of_module(const GModule& m) {
    return {Kind::DualModule, m.dim, nullptr, &m};
  }
};

// Primitive steps of a composite. Diagrams are hard-coded pipelines of these;
// evaluation composes one exact matrix.
struct Step {
  enum class Kind {
    Scalar,          // multiply by an exact scalar
    Swap,            // plain swap of factors (pos, pos+1)
    SuperSwap,       // Koszul-signed swap (needs z)
    InsertCoevKG,    // insert sum_g g (x) delta_g at pos
    EvKG,            // contract (KG, FG) at (pos, pos+1)
    InsertElemKG,    // insert the basis vector `elem` of k[G] at pos
    DeltaFunctional, // apply delta_elem to the KG factor at pos
    MulKG,           // multiply (KG, KG) at (pos, pos+1) into one KG
    HalfBraid,       // gamma = P . R on (A at pos, bundle at pos+1)
    HalfBraidInv,    // gamma^{-1} on (bundle at pos, A at pos+1)
    InsertCoevPair,  // insert sum_m e_m (x) e^m of `module` at pos
    ContractPair,    // plain coordinate contraction of (pos, pos+1)
    ModuleAction,    // act by a D(G) element on the bundle factor at pos
    RegularInsert,   // used by combine/sliding sums (handled at pipeline level)
  };
  Kind kind;
  int pos = 0;
  int elem = 0;
  Cyclo scalar;
  const GModule* module = nullptr;
  const EquivariantBundle* bundle_a = nullptr;  // bundle-pair coev insertion
  const EquivariantBundle* bundle_b = nullptr;
  SparseElem algebra_elem;
};

struct Composite {
  const FiniteGroup* group = nullptr;
  long conductor = 1;
  std::vector<OracleFactor> inputs;
  std::vector<Step> steps;
};

struct Evaluation {
  MatC matrix;  // output-total x input-total
  std::vector<OracleFactor> outputs;
};

// Exact evaluation; throws ShapeMismatch naming the failing step index.
Evaluation evaluate(const Composite& c, const StructAlgebra* dg = nullptr);

// The reduced-product projector Q on V (x) W in Kronecker coordinates:
// regular loop closed through both half-braidings, normalized by 1/|G|.
MatC q_projector(const EquivariantBundle& v, const EquivariantBundle& w);

// Supergroup variant: the same pipeline with Koszul-signed strand crossings.
MatC q_projector_super(const EquivariantBundle& v, const EquivariantBundle& w);

// Checks on the Q projector against the fiberwise product: idempotent,
// equivariant (a morphism of convolution modules), image graded dims equal
// the fiberwise product.
struct QReport {
  bool idempotent = false;
  bool equivariant = false;
  bool graded_dims_match = false;
  bool pass() const { return idempotent && equivariant && graded_dims_match; }
};
QReport q_projector_check(const EquivariantBundle& v, const EquivariantBundle& w, bool super);

// Pivotal suite for (Z(A), (x)bar) evaluated on a bundle: unit constraints
// compose to identities, the zigzag through ev/coev is the identity, reduced
// duals are involutive. All scalars exact, with sqrt(d_i), sqrt(D) radicals
// at the session conductor.
struct PivotalReport {
  bool pass = true;
  std::vector<std::string> failures;
};
PivotalReport pivotal_checks(const EquivariantBundle& v, const Zoo& zoo);

// The l . l^{-1} composites built by the pivotal machinery, exposed for the
// deliberate-denormalization test.
MatC pivotal_left_roundtrip(const EquivariantBundle& v, const Zoo& zoo, bool drop_dim_scale);

// The structure maps of the reduced unit and duality on a bundle, as exact
// matrices (k[G] carries the unit object):
//   l : k[G] (x) X -> X        linv : X -> k[G] (x) X
//   r : X (x) k[G] -> X        rinv : X -> X (x) k[G]
//   ev : X^vee (x) X -> k[G]   coev : k[G] -> X (x) X^vee
struct PivotalMaps {
  MatC l, linv, r, rinv, ev, coev;
};
PivotalMaps pivotal_maps(const EquivariantBundle& v, const Zoo& zoo);

// Eq-style identities at the representation level.
bool combine_check(const std::vector<const GModule*>& tuple, const IrrepZoo& zoo, long conductor);
bool sliding_check(const GModule& strand, const IrrepZoo& zoo, long conductor);
bool naturality_check(const std::vector<const GModule*>& tuple, const GModule& w1,
                      const MatC& f);

// Closed regular loop evaluated both ways: sum_i d_i tr(id_{X_i}) and the
// regular representation trace. Returns the pair (they must agree).
std::pair<Cyclo, Cyclo> regular_loop_traces(const IrrepZoo& zoo, long conductor);

// delta_g action of a bundle computed through its half-braiding gamma = P.R
// (insert e, half-braid against k[G], apply the delta functional).
MatC delta_action_via_halfbraiding(const EquivariantBundle& v, int g);

// U_S equivariance: the dualized half-braiding (standard right dual followed
// by the fiberwise left dual) acts by delta_{g^-1}. Checks the composite
// bundle against us_action(V) on the nose and the delta actions for all g.
bool u_equivariance_check(const EquivariantBundle& v);

// Bundle shadow of the averaging projector over the regular object; returns
// the evaluated composite (tested idempotent; categorical role uninterpreted).
MatC regular_projector(const EquivariantBundle& v);

}  // namespace redten
