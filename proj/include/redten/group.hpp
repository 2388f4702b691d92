#pragma once

#include <optional>
#include <string>
#include <vector>

#include "redten/error.hpp"

namespace redten {

struct ConjClass {
  int representative = 0;
  std::vector<int> members;  // sorted
};

struct CommutingPairs {
  std::vector<std::pair<int, int>> pairs;  // sorted lexicographically
};

struct DiagonalOrbit {
  std::pair<int, int> representative;
  std::vector<std::pair<int, int>> members;  // sorted
  std::vector<int> stabilizer;               // Z(h) ∩ Z(h'), sorted element list
};

// Finite group on dense element indices 0..n-1, via an explicit multiplication
// table. Validated on construction; immutable afterwards.
class FiniteGroup {
 public:
  enum class AssocCheck { Exhaustive, Sampled };

  // Throws NoIdentity / NoInverse / NotAssociative with witnesses.
  explicit FiniteGroup(std::vector<std::vector<int>> table,
                       std::optional<int> z = std::nullopt, std::string name = "");

  int order() const { return n_; }
  const std::string& name() const { return name_; }
  int mul(int a, int b) const { return mul_[size_t(a)][size_t(b)]; }
  int inv(int a) const { return inv_[size_t(a)]; }
  int identity() const { return e_; }
  int conj(int x, int g) const { return mul(mul(x, g), inv(x)); }  // x g x^{-1}
  std::optional<int> z() const { return z_; }
  bool has_z() const { return z_.has_value(); }
  AssocCheck assoc_check_mode() const { return assoc_mode_; }

  long exponent() const;
  int element_order(int g) const;
  bool is_abelian() const;
  std::vector<int> generators() const;  // small generating set (greedy)

  const std::vector<ConjClass>& conjugacy_classes() const;
  int class_of(int g) const;  // index into conjugacy_classes()
  std::vector<int> centralizer(int g) const;
  CommutingPairs commuting_pairs() const;
  std::vector<DiagonalOrbit> diagonal_orbits(const std::vector<std::pair<int, int>>& pairs) const;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  int e_ = 0;
  std::optional<int> z_;
  std::string name_;
  AssocCheck assoc_mode_ = AssocCheck::Exhaustive;

  mutable std::vector<ConjClass> classes_;
  mutable std::vector<int> class_of_;
};

// Subgroup of an ambient group: sorted ambient element list plus the induced
// multiplication re-indexed to 0..k-1. Downstream code (centralizer zoos,
// torus sums) treats it as a FiniteGroup in its own right.
struct Subgroup {
  FiniteGroup group;              // induced table
  std::vector<int> elements;      // subgroup index -> ambient element index
  std::vector<int> ambient_to_sub;  // ambient element -> subgroup index or -1
};

Subgroup subgroup_from_elements(const FiniteGroup& g, std::vector<int> elements);

FiniteGroup group_from_table(std::vector<std::vector<int>> table,
                             std::optional<int> z = std::nullopt, std::string name = "");

// Built-in small groups (used by the zoo generator and tests).
FiniteGroup builtin_cyclic(int n);
FiniteGroup builtin_klein4();
FiniteGroup builtin_s3();
FiniteGroup builtin_d4();
FiniteGroup builtin_q8();

// Searches for an isomorphism from `a` to `b`; returns the image list
// (element i of a -> iso[i] of b) or nullopt. Intended for tiny groups only
// (zoo generation / zoo validation).
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b);

}  // namespace redten
