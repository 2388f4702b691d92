#include "redten/zoo.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace redten {

using nlohmann::json;

const FiniteGroup& Zoo::group(const std::string& name) const {
  auto it = groups_.find(name);
  if (it == groups_.end()) throw Error(Error::Kind::UnknownGroup, "unknown group: " + name);
  return *it->second;
}

const IrrepZoo& Zoo::irreps(const std::string& name) const {
  auto it = irreps_.find(name);
  if (it == irreps_.end())
    throw Error(Error::Kind::MissingCentralizerZoo, "no irreps for group: " + name);
  return it->second;
}

const std::vector<CentralizerRef>& Zoo::centralizers(const std::string& name) const {
  auto it = centralizers_.find(name);
  if (it == centralizers_.end())
    throw Error(Error::Kind::MissingCentralizerZoo, "no centralizer refs for group: " + name);
  return it->second;
}

std::vector<std::string> Zoo::group_names() const {
  std::vector<std::string> names;
  for (const auto& [k, v] : groups_) names.push_back(k);
  return names;
}

bool Zoo::has_group(const std::string& name) const { return groups_.count(name) > 0; }

void Zoo::add_group(std::unique_ptr<FiniteGroup> g) {
  const std::string& name = g->name();
  groups_[name] = g.get();
  store_.push_back(std::move(g));
}

namespace {

MatC mat1(const Cyclo& x) { return MatC::Constant(1, 1, x); }

// 1-dimensional representation from the images of all elements.
GModule onedim(const FiniteGroup& g, const std::vector<Cyclo>& vals) {
  GModule m;
  m.group = &g;
  m.dim = 1;
  for (const auto& v : vals) m.rho.push_back(mat1(v));
  return m;
}

// Representation from generator images: closes over words.
GModule from_generators(const FiniteGroup& g, const std::vector<int>& gens,
                        const std::vector<MatC>& imgs, int dim) {
  GModule m;
  m.group = &g;
  m.dim = dim;
  m.rho.assign(size_t(g.order()), MatC());
  m.rho[size_t(g.identity())] = id_mat<Cyclo>(dim);
  std::vector<int> frontier{g.identity()};
  while (!frontier.empty()) {
    std::vector<int> fresh;
    for (int x : frontier) {
      for (size_t i = 0; i < gens.size(); ++i) {
        int y = g.mul(gens[i], x);
        if (m.rho[size_t(y)].size() == 0) {
          m.rho[size_t(y)] = imgs[i] * m.rho[size_t(x)];
          fresh.push_back(y);
        }
      }
    }
    frontier = std::move(fresh);
  }
  for (const auto& r : m.rho)
    if (r.size() == 0) throw Error(Error::Kind::BadInput, "generators do not generate");
  return m;
}

IrrepZoo make_cyclic_irreps(const FiniteGroup& g, int n) {
  IrrepZoo z;
  z.group = &g;
  z.trivial_index = 0;
  for (int j = 0; j < n; ++j) {
    std::vector<Cyclo> vals;
    for (int k = 0; k < n; ++k) vals.push_back(Cyclo::zeta(n, (long(j) * k) % n));
    z.irreps.push_back({"chi" + std::to_string(j), onedim(g, vals)});
  }
  return z;
}

IrrepZoo make_v4_irreps(const FiniteGroup& g) {
  IrrepZoo z;
  z.group = &g;
  z.trivial_index = 0;
  for (int sa = 0; sa < 2; ++sa)
    for (int sb = 0; sb < 2; ++sb) {
      std::vector<Cyclo> vals;
      for (int x = 0; x < 4; ++x) {
        int a = x >> 1, b = x & 1;
        vals.push_back(Cyclo(((sa * a + sb * b) % 2) ? -1 : 1));
      }
      z.irreps.push_back({"chi" + std::to_string(sa) + std::to_string(sb), onedim(g, vals)});
    }
  return z;
}

IrrepZoo make_s3_irreps(const FiniteGroup& g) {
  IrrepZoo z;
  z.group = &g;
  z.trivial_index = 0;
  std::vector<Cyclo> triv, sign;
  for (int x = 0; x < 6; ++x) {
    triv.push_back(Cyclo(1));
    sign.push_back(Cyclo(g.element_order(x) == 2 ? -1 : 1));
  }
  z.irreps.push_back({"triv", onedim(g, triv)});
  z.irreps.push_back({"sign", onedim(g, sign)});
  // standard 2-dim on the sum-zero subspace, basis e0-e1, e1-e2;
  // builtin_s3 element 1 is the 3-cycle, element 3 a transposition
  MatC rot(2, 2), swp(2, 2);
  rot << Cyclo(0), Cyclo(-1), Cyclo(1), Cyclo(-1);
  swp << Cyclo(-1), Cyclo(1), Cyclo(0), Cyclo(1);
  z.irreps.push_back({"std", from_generators(g, {1, 3}, {rot, swp}, 2)});
  return z;
}

IrrepZoo make_d4_irreps(const FiniteGroup& g) {
  IrrepZoo z;
  z.group = &g;
  z.trivial_index = 0;
  // elements r^a s^b at index 4b+a
  for (int sr = 0; sr < 2; ++sr)
    for (int ss = 0; ss < 2; ++ss) {
      std::vector<Cyclo> vals;
      for (int x = 0; x < 8; ++x) {
        int a = x % 4, b = x / 4;
        vals.push_back(Cyclo(((sr * a + ss * b) % 2) ? -1 : 1));
      }
      z.irreps.push_back({"chi" + std::to_string(sr) + std::to_string(ss), onedim(g, vals)});
    }
  MatC r(2, 2), s(2, 2);
  r << Cyclo(0), Cyclo(-1), Cyclo(1), Cyclo(0);
  s << Cyclo(1), Cyclo(0), Cyclo(0), Cyclo(-1);
  z.irreps.push_back({"twodim", from_generators(g, {1, 4}, {r, s}, 2)});
  return z;
}

IrrepZoo make_q8_irreps(const FiniteGroup& g) {
  IrrepZoo z;
  z.group = &g;
  z.trivial_index = 0;
  // elements 1,-1,i,-i,j,-j,k,-k at 0..7; the four characters factor through
  // Q8/{+-1}
  for (int si = 0; si < 2; ++si)
    for (int sj = 0; sj < 2; ++sj) {
      std::vector<Cyclo> vals;
      for (int x = 0; x < 8; ++x) {
        int base = x / 2;  // 0:1, 1:i, 2:j, 3:k
        int sign = 1;
        if (base == 1 && si) sign = -sign;
        if (base == 2 && sj) sign = -sign;
        if (base == 3 && (si + sj) % 2) sign = -sign;
        vals.push_back(Cyclo(sign));
      }
      z.irreps.push_back({"chi" + std::to_string(si) + std::to_string(sj), onedim(g, vals)});
    }
  Cyclo zi = Cyclo::zeta(4);
  MatC mi(2, 2), mj(2, 2);
  mi << zi, Cyclo(0), Cyclo(0), -zi;
  mj << Cyclo(0), Cyclo(-1), Cyclo(1), Cyclo(0);
  z.irreps.push_back({"twodim", from_generators(g, {2, 4}, {mi, mj}, 2)});
  return z;
}

std::vector<CentralizerRef> make_centralizer_refs(const Zoo& zoo, const FiniteGroup& g) {
  std::vector<CentralizerRef> refs;
  for (const auto& cls : g.conjugacy_classes()) {
    Subgroup sub = subgroup_from_elements(g, g.centralizer(cls.representative));
    CentralizerRef ref;
    ref.class_rep = cls.representative;
    bool found = false;
    for (const auto& name : zoo.group_names()) {
      const FiniteGroup& cand = zoo.group(name);
      if (cand.order() != sub.group.order()) continue;
      auto iso = find_isomorphism(sub.group, cand);
      if (iso) {
        ref.group = name;
        ref.mapping = *iso;
        found = true;
        break;
      }
    }
    if (!found)
      throw Error(Error::Kind::MissingCentralizerZoo,
                  "no zoo group isomorphic to the centralizer of class rep " +
                      std::to_string(cls.representative) + " in " + g.name());
    refs.push_back(std::move(ref));
  }
  return refs;
}

json cyclo_to_json(const Cyclo& x) {
  json coeffs = json::array();
  for (const auto& r : x.coeffs()) {
    if (!r.fits_long()) throw Error(Error::Kind::BadInput, "coefficient too large for zoo JSON");
    coeffs.push_back(json::array({r.num_long(), r.den_long()}));
  }
  return json{{"M", x.conductor()}, {"coeffs", coeffs}};
}

Cyclo cyclo_from_json(const json& j) {
  long m = j.at("M").get<long>();
  std::vector<Rational> coeffs;
  for (const auto& c : j.at("coeffs"))
    coeffs.push_back(Rational(c.at(0).get<long>(), c.at(1).get<long>()));
  return Cyclo::from_coeffs(m, std::move(coeffs));
}

}  // namespace

std::shared_ptr<Zoo> builtin_zoo() {
  auto zoo = std::make_shared<Zoo>();

  auto add = [&](FiniteGroup g) { zoo->add_group(std::make_unique<FiniteGroup>(std::move(g))); };

  add(builtin_cyclic(2));
  add(builtin_cyclic(3));
  // Z4 carries the order-2 central element as z (supergroup case)
  {
    FiniteGroup z4raw = builtin_cyclic(4);
    std::vector<std::vector<int>> t;
    for (int a = 0; a < 4; ++a) {
      t.emplace_back();
      for (int b = 0; b < 4; ++b) t.back().push_back(z4raw.mul(a, b));
    }
    add(FiniteGroup(t, 2, "Z4"));
  }
  add(builtin_klein4());
  add(builtin_s3());
  add(builtin_d4());
  // Q8 carries z = -1
  {
    FiniteGroup q8raw = builtin_q8();
    std::vector<std::vector<int>> t;
    for (int a = 0; a < 8; ++a) {
      t.emplace_back();
      for (int b = 0; b < 8; ++b) t.back().push_back(q8raw.mul(a, b));
    }
    add(FiniteGroup(t, 1, "Q8"));
  }

  zoo->set_irreps("Z2", make_cyclic_irreps(zoo->group("Z2"), 2));
  zoo->set_irreps("Z3", make_cyclic_irreps(zoo->group("Z3"), 3));
  zoo->set_irreps("Z4", make_cyclic_irreps(zoo->group("Z4"), 4));
  zoo->set_irreps("V4", make_v4_irreps(zoo->group("V4")));
  zoo->set_irreps("S3", make_s3_irreps(zoo->group("S3")));
  zoo->set_irreps("D4", make_d4_irreps(zoo->group("D4")));
  zoo->set_irreps("Q8", make_q8_irreps(zoo->group("Q8")));

  for (const auto& name : zoo->group_names())
    zoo->set_centralizers(name, make_centralizer_refs(*zoo, zoo->group(name)));
  return zoo;
}

std::string zoo_to_json(const Zoo& zoo) {
  json root;
  root["schema"] = 1;
  root["groups"] = json::array();
  root["irreps"] = json::object();
  root["centralizers"] = json::object();
  for (const auto& name : zoo.group_names()) {
    const FiniteGroup& g = zoo.group(name);
    json table = json::array();
    for (int a = 0; a < g.order(); ++a) {
      json row = json::array();
      for (int b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
      table.push_back(row);
    }
    json jg{{"name", name}, {"table", table}};
    if (g.has_z())
      jg["z"] = *g.z();
    else
      jg["z"] = nullptr;
    root["groups"].push_back(jg);

    const IrrepZoo& iz = zoo.irreps(name);
    json jirr = json::array();
    for (const auto& ir : iz.irreps) {
      json mats = json::object();
      for (int x = 0; x < g.order(); ++x) {
        json m = json::array();
        for (int i = 0; i < ir.module.dim; ++i) {
          json row = json::array();
          for (int jcol = 0; jcol < ir.module.dim; ++jcol)
            row.push_back(cyclo_to_json(ir.module.act(x)(i, jcol)));
          m.push_back(row);
        }
        mats[std::to_string(x)] = m;
      }
      jirr.push_back(json{{"label", ir.label}, {"dim", ir.module.dim}, {"matrices", mats}});
    }
    root["irreps"][name] = jirr;

    json jc = json::array();
    for (const auto& ref : zoo.centralizers(name))
      jc.push_back(
          json{{"class_rep", ref.class_rep}, {"group", ref.group}, {"mapping", ref.mapping}});
    root["centralizers"][name] = jc;
  }
  return root.dump(1);
}

std::shared_ptr<Zoo> zoo_from_json(const std::string& text) {
  json root = json::parse(text);
  if (!root.contains("schema") || root["schema"].get<int>() != 1)
    throw Error(Error::Kind::BadInput, "zoo schema must be 1");
  auto zoo = std::make_shared<Zoo>();
  for (const auto& jg : root.at("groups")) {
    std::vector<std::vector<int>> table;
    for (const auto& row : jg.at("table")) table.push_back(row.get<std::vector<int>>());
    std::optional<int> z;
    if (jg.contains("z") && !jg["z"].is_null()) z = jg["z"].get<int>();
    zoo->add_group(std::make_unique<FiniteGroup>(table, z, jg.at("name").get<std::string>()));
  }
  for (const auto& [name, jirr] : root.at("irreps").items()) {
    const FiniteGroup& g = zoo->group(name);
    IrrepZoo iz;
    iz.group = &g;
    iz.trivial_index = -1;
    for (const auto& ji : jirr) {
      Irrep ir;
      ir.label = ji.at("label").get<std::string>();
      ir.module.group = &g;
      ir.module.dim = ji.at("dim").get<int>();
      ir.module.rho.resize(size_t(g.order()));
      for (int x = 0; x < g.order(); ++x) {
        const json& m = ji.at("matrices").at(std::to_string(x));
        MatC mat(ir.module.dim, ir.module.dim);
        for (int i = 0; i < ir.module.dim; ++i)
          for (int jcol = 0; jcol < ir.module.dim; ++jcol)
            mat(i, jcol) = cyclo_from_json(m.at(size_t(i)).at(size_t(jcol)));
        ir.module.rho[size_t(x)] = std::move(mat);
      }
      iz.irreps.push_back(std::move(ir));
    }
    for (size_t i = 0; i < iz.irreps.size(); ++i) {
      const auto& m = iz.irreps[i].module;
      bool is_triv = (m.dim == 1);
      for (int x = 0; x < g.order() && is_triv; ++x)
        if (!(m.act(x)(0, 0) == Cyclo(1))) is_triv = false;
      if (is_triv) {
        iz.trivial_index = int(i);
        break;
      }
    }
    if (iz.trivial_index < 0)
      throw Error(Error::Kind::BadInput, "zoo for " + name + " has no trivial irrep");
    ZooReport rep = zoo_validate(iz);
    if (!rep.pass)
      throw Error(Error::Kind::BadInput,
                  "zoo validation failed for " + name + ": " + rep.failures.front());
    zoo->set_irreps(name, std::move(iz));
  }
  for (const auto& [name, jc] : root.at("centralizers").items()) {
    const FiniteGroup& g = zoo->group(name);
    std::vector<CentralizerRef> refs;
    for (const auto& jr : jc) {
      CentralizerRef ref;
      ref.class_rep = jr.at("class_rep").get<int>();
      ref.group = jr.at("group").get<std::string>();
      ref.mapping = jr.at("mapping").get<std::vector<int>>();
      Subgroup sub = subgroup_from_elements(g, g.centralizer(ref.class_rep));
      const FiniteGroup& target = zoo->group(ref.group);
      if (int(ref.mapping.size()) != sub.group.order() || sub.group.order() != target.order())
        throw Error(Error::Kind::BadInput, "centralizer mapping has wrong size");
      std::vector<char> seen(size_t(target.order()), 0);
      for (int v : ref.mapping) {
        if (v < 0 || v >= target.order() || seen[size_t(v)])
          throw Error(Error::Kind::BadInput, "centralizer mapping is not a bijection");
        seen[size_t(v)] = 1;
      }
      for (int a = 0; a < sub.group.order(); ++a)
        for (int b = 0; b < sub.group.order(); ++b)
          if (ref.mapping[size_t(sub.group.mul(a, b))] !=
              target.mul(ref.mapping[size_t(a)], ref.mapping[size_t(b)]))
            throw Error(Error::Kind::BadInput,
                        "centralizer mapping is not a homomorphism for " + name);
      refs.push_back(std::move(ref));
    }
    zoo->set_centralizers(name, std::move(refs));
  }
  return zoo;
}

std::shared_ptr<Zoo> load_zoo_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Kind::BadInput, "cannot open zoo file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return zoo_from_json(ss.str());
}

void save_zoo_file(const Zoo& zoo, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Error::Kind::BadInput, "cannot write zoo file: " + path);
  out << zoo_to_json(zoo) << "\n";
}

}  // namespace redten
