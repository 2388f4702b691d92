#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "redten/cyclo.hpp"
#include "redten/linalg.hpp"

namespace redten {

// Fusion label data for the matrix model: labels with an involution and
// exact positive dimensions, d_1 = 1 and d_{i*} = d_i.
struct FusionLabelSet {
  std::vector<std::string> labels;
  std::vector<int> dual;   // involution on indices
  std::vector<Cyclo> dims;
  int unit_index = 0;

  int size() const { return int(labels.size()); }
};

void validate_label_set(const FusionLabelSet& s);

using MultMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Object of the matrix model: a labels x labels multiplicity matrix.
struct MatVecObject {
  const FusionLabelSet* labels = nullptr;
  MultMat m;
};

MatVecObject mv_simple(const FusionLabelSet& s, int i, int j);  // X_i^j
MatVecObject mv_unit(const FusionLabelSet& s);                  // sum_i X_i^i

// Reduced product: natural-number matrix multiplication.
MatVecObject red_product(const MatVecObject& v, const MatVecObject& w);

// Brute-force oracle for the reduced product: decompose into simples and
// apply the delta fusion rule for simple pairs, extended biadditively.
MatVecObject red_product_oracle(const MatVecObject& v, const MatVecObject& w);

MatVecObject mv_dual(const MatVecObject& v);   // (V^vee)_i^j = V_{j*}^{i*}
MatVecObject um_action(const MatVecObject& v); // transpose

Cyclo left_dim(const MatVecObject& v);   // sum of multiplicities of X_i^j times d_j/d_i
Cyclo right_dim(const MatVecObject& v);

// Shipped label-set builders and the JSON reader for the CLI.
FusionLabelSet labels_fibonacci();             // {1, tau}, d_tau = golden ratio in Q(zeta_5)
FusionLabelSet labels_ising();                 // {1, s, psi}, d_s = sqrt(2) at conductor 8
FusionLabelSet labels_from_dims(const std::vector<long>& dims);  // self-dual integer dims

FusionLabelSet label_set_from_json(const std::string& text);  // throws BadLabelFile
std::string label_set_to_json(const FusionLabelSet& s);

}  // namespace redten
