#include "redten/matvec.hpp"

#include <json.hpp>

namespace redten {

void validate_label_set(const FusionLabelSet& s) {
  int n = s.size();
  if (n == 0) throw Error(Error::Kind::BadLabelFile, "empty label set");
  if (int(s.dual.size()) != n || int(s.dims.size()) != n)
    throw Error(Error::Kind::BadLabelFile, "label set field sizes disagree");
  for (int i = 0; i < n; ++i) {
    if (s.dual[size_t(i)] < 0 || s.dual[size_t(i)] >= n ||
        s.dual[size_t(s.dual[size_t(i)])] != i)
      throw Error(Error::Kind::BadLabelFile, "dual is not an involution");
    double rad = 0;
    auto v = s.dims[size_t(i)].embed(&rad);
    if (!(v.real() > rad) || std::abs(v.imag()) > rad + 1e-9)
      throw Error(Error::Kind::BadLabelFile, "dimension of " + s.labels[size_t(i)] +
                                                 " is not positive");
    if (!(s.dims[size_t(i)] == s.dims[size_t(s.dual[size_t(i)])]))
      throw Error(Error::Kind::BadLabelFile, "d_{i*} != d_i");
  }
  if (!(s.dims[size_t(s.unit_index)] == Cyclo(1)))
    throw Error(Error::Kind::BadLabelFile, "unit label must have dimension 1");
}

MatVecObject mv_simple(const FusionLabelSet& s, int i, int j) {
  MatVecObject v;
  v.labels = &s;
  v.m = MultMat::Zero(s.size(), s.size());
  v.m(i, j) = 1;
  return v;
}

MatVecObject mv_unit(const FusionLabelSet& s) {
  MatVecObject v;
  v.labels = &s;
  v.m = MultMat::Identity(s.size(), s.size());
  return v;
}

MatVecObject red_product(const MatVecObject& v, const MatVecObject& w) {
  if (v.labels != w.labels) throw Error(Error::Kind::LabelMismatch, "different label sets");
  MatVecObject r;
  r.labels = v.labels;
  r.m = v.m * w.m;
  return r;
}

MatVecObject red_product_oracle(const MatVecObject& v, const MatVecObject& w) {
  if (v.labels != w.labels) throw Error(Error::Kind::LabelMismatch, "different label sets");
  int n = v.labels->size();
  MatVecObject r;
  r.labels = v.labels;
  r.m = MultMat::Zero(n, n);
  // X_i^j (x)bar X_k^l = delta_{j,k} X_i^l, extended biadditively
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (v.m(i, j) == 0) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (w.m(k, l) == 0 || j != k) continue;
          r.m(i, l) += v.m(i, j) * w.m(k, l);
        }
    }
  return r;
}

MatVecObject mv_dual(const MatVecObject& v) {
  int n = v.labels->size();
  MatVecObject r;
  r.labels = v.labels;
  r.m = MultMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.m(i, j) = v.m(v.labels->dual[size_t(j)], v.labels->dual[size_t(i)]);
  return r;
}

MatVecObject um_action(const MatVecObject& v) {
  MatVecObject r;
  r.labels = v.labels;
  r.m = v.m.transpose();
  return r;
}

Cyclo left_dim(const MatVecObject& v) {
  int n = v.labels->size();
  Cyclo acc(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (v.m(i, j) == 0) continue;
      Cyclo term = v.labels->dims[size_t(j)] / v.labels->dims[size_t(i)];
      acc += Cyclo(long(v.m(i, j))) * term;
    }
  return acc;
}

Cyclo right_dim(const MatVecObject& v) {
  int n = v.labels->size();
  Cyclo acc(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (v.m(i, j) == 0) continue;
      Cyclo term = v.labels->dims[size_t(i)] / v.labels->dims[size_t(j)];
      acc += Cyclo(long(v.m(i, j))) * term;
    }
  return acc;
}

FusionLabelSet labels_fibonacci() {
  FusionLabelSet s;
  s.labels = {"1", "tau"};
  s.dual = {0, 1};
  // golden ratio = 1 + zeta_5 + zeta_5^4 in Q(zeta_5)
  Cyclo phi = Cyclo(1) + Cyclo::zeta(5) + Cyclo::zeta(5, 4);
  s.dims = {Cyclo::from_rational(Rational(1), 5), phi};
  s.unit_index = 0;
  validate_label_set(s);
  return s;
}

FusionLabelSet labels_ising() {
  FusionLabelSet s;
  s.labels = {"1", "sigma", "psi"};
  s.dual = {0, 1, 2};
  s.dims = {Cyclo::from_rational(Rational(1), 8), sqrt_int(2, 8),
            Cyclo::from_rational(Rational(1), 8)};
  s.unit_index = 0;
  validate_label_set(s);
  return s;
}

FusionLabelSet labels_from_dims(const std::vector<long>& dims) {
  FusionLabelSet s;
  for (size_t i = 0; i < dims.size(); ++i) {
    s.labels.push_back("X" + std::to_string(i));
    s.dual.push_back(int(i));
    s.dims.push_back(Cyclo(dims[i]));
  }
  s.unit_index = 0;
  validate_label_set(s);
  return s;
}

FusionLabelSet label_set_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Error::Kind::BadLabelFile, std::string("label file is not JSON: ") + e.what());
  }
  FusionLabelSet s;
  try {
    s.labels = j.at("labels").get<std::vector<std::string>>();
    s.dual = j.at("dual").get<std::vector<int>>();
    s.unit_index = j.value("unit", 0);
    for (const auto& d : j.at("dims")) {
      long m = d.at("M").get<long>();
      std::vector<Rational> coeffs;
      for (const auto& c : d.at("coeffs"))
        coeffs.push_back(Rational(c.at(0).get<long>(), c.at(1).get<long>()));
      s.dims.push_back(Cyclo::from_coeffs(m, std::move(coeffs)));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(Error::Kind::BadLabelFile, std::string("bad label file: ") + e.what());
  }
  validate_label_set(s);
  return s;
}

std::string label_set_to_json(const FusionLabelSet& s) {
  nlohmann::json j;
  j["labels"] = s.labels;
  j["dual"] = s.dual;
  j["unit"] = s.unit_index;
  j["dims"] = nlohmann::json::array();
  for (const auto& d : s.dims) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& r : d.coeffs())
      coeffs.push_back(nlohmann::json::array({r.num_long(), r.den_long()}));
    j["dims"].push_back(nlohmann::json{{"M", d.conductor()}, {"coeffs", coeffs}});
  }
  return j.dump(1);
}

}  // namespace redten
