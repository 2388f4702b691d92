#pragma once

#include <functional>
#include <string>
#include <vector>

#include "redten/group.hpp"
#include "redten/linalg.hpp"
#include "redten/rational.hpp"

namespace redten {

// Sparse algebra element: sorted (basis index, coefficient) pairs.
using SparseElem = std::vector<std::pair<int, Rational>>;

SparseElem sparse_normalize(SparseElem v);
SparseElem sparse_add(const SparseElem& a, const SparseElem& b);
SparseElem sparse_scale(const SparseElem& a, const Rational& f);
bool sparse_eq(const SparseElem& a, const SparseElem& b);

// Finite-dimensional associative algebra over Q given by structure constants.
// Associativity and unitality are checked on construction (exhaustively for
// dim <= 1500, by seeded sampling above).
class StructAlgebra {
 public:
  enum class AssocCheck { Exhaustive, Sampled };

  using ProductFn = std::function<SparseElem(int, int)>;

  StructAlgebra(int dim, std::vector<std::string> labels, ProductFn product, SparseElem unit,
                std::vector<SparseElem> generating_set = {});

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const SparseElem& unit() const { return unit_; }
  AssocCheck assoc_check_mode() const { return assoc_mode_; }
  const std::vector<SparseElem>& generating_set() const { return gens_; }

  SparseElem basis_product(int a, int b) const;
  SparseElem multiply(const SparseElem& x, const SparseElem& y) const;

 private:
  int dim_;
  std::vector<std::string> labels_;
  SparseElem unit_;
  std::vector<SparseElem> gens_;
  AssocCheck assoc_mode_ = AssocCheck::Exhaustive;

  bool monomial_ = false;
  std::vector<int> mono_idx_;            // dim*dim; -1 for zero product
  std::vector<Rational> mono_coeff_;     // dim*dim
  std::vector<std::vector<SparseElem>> generic_;

  void validate();
};

// Product in A (x) A on pair indices p = a*dim + b.
SparseElem tensor_square_product(const StructAlgebra& a, const SparseElem& x, const SparseElem& y);

// Linear map between algebras given by basis images; checked to be
// multiplicative on all basis pairs (and optionally unital).
struct AlgebraMap {
  const StructAlgebra* source = nullptr;
  const StructAlgebra* target = nullptr;  // when into_tensor_square, pair indices over `target`
  bool into_tensor_square = false;
  std::vector<SparseElem> images;

  SparseElem apply(const SparseElem& x) const;
  bool is_multiplicative() const;      // all basis pairs
  bool is_unital() const;
  bool is_isomorphism() const;         // square, invertible (only for plain maps)
};

// Dimension over Q of {x : xa = ax for all a}; computed as the commutant of
// the algebra's generating set (equivalently of all basis elements) by an
// exact sparse null-space computation. Stable under scalar extension, so this
// equals the number of simple modules over a splitting field.
int center_dimension(const StructAlgebra& a);
int center_dimension_full_basis(const StructAlgebra& a);  // cross-check variant

StructAlgebra group_algebra(const FiniteGroup& g);

// Drinfeld double D(G): basis g (x) delta_h at index g*|G|+h, smash-product
// multiplication. The generating set is {g (x) delta_* : g generators} and
// {e (x) delta_h : h in G}.
StructAlgebra drinfeld_double(const FiniteGroup& g);

// R-matrix sum_g g (x) delta_g as a pair-indexed element of D(G) (x) D(G).
SparseElem r_matrix(const FiniteGroup& g);

// Coproduct bar: g -> g(x)g, delta_g -> delta_g (x) delta_g, extended
// multiplicatively; an algebra homomorphism that does not preserve the unit.
AlgebraMap coproduct_bar(const FiniteGroup& g, const StructAlgebra& dg);

// Super coproduct bar_z with the left-multiplication parity idempotents
// e^sigma = (1 +- z)/2 of D(G). Requires z.
AlgebraMap coproduct_bar_z(const FiniteGroup& g, const StructAlgebra& dg);

// lambda: g -> g, delta_g -> delta_g^0 + delta_{gz}^1; an algebra isomorphism
// intertwining the two coproducts.
AlgebraMap lambda_automorphism(const FiniteGroup& g, const StructAlgebra& dg);

// Parity elements of D(G). Left multiplication convention: e^sigma * x inside
// the algebra. The F(G)-side convention (delta_g + (-1)^sigma delta_{gz})/2
// is a different element; both are provided as distinct constructors to keep
// the two conventions from being silently confused.
SparseElem parity_idempotent(const FiniteGroup& g, const StructAlgebra& dg, int sigma);
SparseElem delta_parity_left(const FiniteGroup& g, const StructAlgebra& dg, int elem, int sigma);
SparseElem delta_parity_fnside(const FiniteGroup& g, const StructAlgebra& dg, int elem, int sigma);

StructAlgebra elliptic_double(const FiniteGroup& g);

struct TorusAlgebra {
  StructAlgebra algebra;                      // D_{T^2}(G)
  std::vector<std::pair<int, int>> pairs;     // Omega, in basis order
  // basis index = g * |Omega| + pair_index
};
TorusAlgebra torus_subalgebra(const FiniteGroup& g);

struct TorusCheck {
  int lhs = 0;            // center_dimension(D_{T^2}(G))
  int rhs_classes = 0;    // sum over classes of center_dimension(D(Z(g)))
  int rhs_orbits = 0;     // sum over diagonal orbits on Omega of #classes(stabilizer)
  bool equal = false;
};
TorusCheck torus_center_check(const FiniteGroup& g);

}  // namespace redten
