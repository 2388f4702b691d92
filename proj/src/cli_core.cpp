#include "redten/cli_core.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "redten/bundle.hpp"
#include "redten/matvec.hpp"
#include "redten/oracle.hpp"
#include "redten/struct_algebra.hpp"

namespace redten {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

struct Options {
  std::string command;
  std::string group;
  std::string product = "red";
  std::string format = "table";
  std::string zoo_path;
  std::string labels_file;
  std::string suite;
  std::uint64_t seed = 20240817ULL;
  int trials = 20;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Options parse_args(const std::vector<std::string>& args) {
  Options o;
  if (args.empty()) throw UsageError("no command; expected one of group-info, fusion, torus, matvec, oracle");
  o.command = args[0];
  std::vector<std::string> positional;
  for (size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto need_value = [&](const std::string& flag) -> std::string {
      if (i + 1 >= args.size()) throw UsageError(flag + " needs a value");
      return args[++i];
    };
    if (a == "--group") o.group = need_value(a);
    else if (a == "--product") o.product = need_value(a);
    else if (a == "--format") o.format = need_value(a);
    else if (a == "--zoo") o.zoo_path = need_value(a);
    else if (a == "--seed") o.seed = std::stoull(need_value(a));
    else if (a == "--trials") o.trials = std::stoi(need_value(a));
    else if (!a.empty() && a[0] == '-') throw UsageError("unknown flag " + a);
    else positional.push_back(a);
  }
  if (o.command == "group-info" || o.command == "fusion" || o.command == "torus") {
    if (o.group.empty() && !positional.empty()) o.group = positional[0];
    if (o.group.empty()) throw UsageError(o.command + " needs a group name");
  } else if (o.command == "matvec") {
    if (!positional.empty()) o.labels_file = positional[0];
    if (o.labels_file.empty()) throw UsageError("matvec needs a labels file");
  } else if (o.command == "oracle") {
    if (!positional.empty()) o.suite = positional[0];
    if (o.suite.empty()) throw UsageError("oracle needs a suite name");
  } else {
    throw UsageError("unknown command " + o.command);
  }
  if (o.format != "table" && o.format != "json") throw UsageError("--format must be json or table");
  if (o.product != "conv" && o.product != "red" && o.product != "redz")
    throw UsageError("--product must be conv, red or redz");
  return o;
}

std::shared_ptr<Zoo> resolve_zoo(const Options& o, std::string& source) {
  if (!o.zoo_path.empty()) {
    source = o.zoo_path;
    return load_zoo_file(o.zoo_path);
  }
  if (const char* env = std::getenv("REDTEN_ZOO")) {
    source = env;
    return load_zoo_file(env);
  }
  std::ifstream probe("data/zoo.json");
  if (probe) {
    source = "data/zoo.json";
    return load_zoo_file("data/zoo.json");
  }
  source = "builtin";
  return builtin_zoo();
}

json report_skeleton(const Options& o, const std::string& zoo_source) {
  json r;
  r["schema"] = 1;
  r["command"] = o.command;
  std::string digest_src = o.command + "|" + o.group + "|" + o.product + "|" + o.labels_file +
                           "|" + o.suite + "|" + zoo_source + "|" + std::to_string(o.trials);
  r["inputs_digest"] = hex64(fnv1a(digest_src));
  r["seed"] = o.seed;
  return r;
}

std::string render_table(const json& report);

ProductKind product_kind(const std::string& p) {
  if (p == "conv") return ProductKind::Convolution;
  if (p == "red") return ProductKind::Reduced;
  return ProductKind::ReducedZ;
}

json cmd_group_info(const Options& o, const Zoo& zoo) {
  const FiniteGroup& g = zoo.group(o.group);
  json res;
  res["order"] = g.order();
  json classes = json::array();
  for (const auto& c : g.conjugacy_classes()) {
    classes.push_back(json{{"representative", c.representative},
                           {"size", c.members.size()},
                           {"centralizer_order", g.centralizer(c.representative).size()}});
  }
  res["classes"] = classes;
  res["class_count"] = g.conjugacy_classes().size();
  CommutingPairs cp = g.commuting_pairs();
  res["commuting_pairs"] = cp.pairs.size();
  auto orbits = g.diagonal_orbits(cp.pairs);
  res["diagonal_orbits"] = orbits.size();
  json orbj = json::array();
  for (const auto& orb : orbits)
    orbj.push_back(json{{"representative", {orb.representative.first, orb.representative.second}},
                        {"size", orb.members.size()},
                        {"stabilizer_order", orb.stabilizer.size()}});
  res["orbits"] = orbj;
  res["has_z"] = g.has_z();
  return res;
}

json cmd_fusion(const Options& o, const Zoo& zoo) {
  const FiniteGroup& g = zoo.group(o.group);
  ProductKind kind = product_kind(o.product);
  if (kind == ProductKind::ReducedZ && !g.has_z())
    throw Error(Error::Kind::ZMissing, "group " + o.group + " has no z; redz unavailable");
  long m = session_conductor(g, zoo.irreps(o.group));
  auto s = simples(g, zoo, m);
  FusionTable t = fusion_table(s, kind);
  json res;
  res["labels"] = t.labels;
  json dims = json::array();
  for (const auto& sb : s) dims.push_back(sb.bundle.total);
  res["dims"] = dims;
  res["tensor"] = t.mult;

  // dimension consistency: sum_c N_{ab}^c dim(c) = dim(a * b)
  bool dim_ok = true;
  for (size_t a = 0; a < s.size(); ++a)
    for (size_t b = 0; b < s.size(); ++b) {
      long total = 0;
      for (size_t c = 0; c < s.size(); ++c)
        total += long(t.mult[a][b][c]) * s[c].bundle.total;
      long prod = product_bundle(s[a].bundle, s[b].bundle, kind).total;
      if (total != prod) dim_ok = false;
    }
  res["dim_consistency"] = dim_ok;

  if (kind == ProductKind::Convolution) {
    // duals and Frobenius reciprocity N_{ab}^c = N_{a* c}^b
    int unit_index = -1;
    for (size_t c = 0; c < s.size(); ++c)
      if (certified_iso(s[c].bundle, unit_convolution(g), 5)) unit_index = int(c);
    std::vector<int> dual_index(s.size(), -1);
    for (size_t a = 0; a < s.size(); ++a)
      for (size_t b = 0; b < s.size(); ++b)
        if (unit_index >= 0 && t.mult[a][b][size_t(unit_index)] == 1) dual_index[a] = int(b);
    bool frob = unit_index >= 0;
    for (size_t a = 0; a < s.size() && frob; ++a) {
      if (dual_index[a] < 0) {
        frob = false;
        break;
      }
      for (size_t b = 0; b < s.size() && frob; ++b)
        for (size_t c = 0; c < s.size() && frob; ++c)
          if (t.mult[a][b][c] != t.mult[size_t(dual_index[a])][c][b]) frob = false;
    }
    res["dual_consistency"] = frob;
  }
  return res;
}

json cmd_torus(const Options& o, const Zoo& zoo) {
  const FiniteGroup& g = zoo.group(o.group);
  TorusCheck tc = torus_center_check(g);
  json res;
  res["center_dim_torus_algebra"] = tc.lhs;
  res["sum_over_classes"] = tc.rhs_classes;
  res["orbit_weighted_count"] = tc.rhs_orbits;
  res["equal"] = tc.equal;
  return res;
}

json cyclo_str(const Cyclo& c) { return c.str(); }

json cmd_matvec(const Options& o) {
  std::ifstream in(o.labels_file);
  if (!in) throw Error(Error::Kind::BadLabelFile, "cannot open " + o.labels_file);
  std::stringstream ss;
  ss << in.rdbuf();
  FusionLabelSet s = label_set_from_json(ss.str());
  json res;
  res["labels"] = s.labels;
  int n = s.size();
  json ldim = json::array(), rdim = json::array();
  for (int i = 0; i < n; ++i) {
    json lrow = json::array(), rrow = json::array();
    for (int j = 0; j < n; ++j) {
      lrow.push_back(cyclo_str(left_dim(mv_simple(s, i, j))));
      rrow.push_back(cyclo_str(right_dim(mv_simple(s, i, j))));
    }
    ldim.push_back(lrow);
    rdim.push_back(rrow);
  }
  res["left_dim"] = ldim;
  res["right_dim"] = rdim;
  // fusion of simples: X_i^j (x)bar X_k^l = delta_{jk} X_i^l
  json fus = json::array();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          MatVecObject p = red_product(mv_simple(s, i, j), mv_simple(s, k, l));
          if (p.m.isZero()) continue;
          fus.push_back(json{{"left", {i, j}}, {"right", {k, l}}, {"result", {i, l}}});
        }
  res["simple_products"] = fus;
  res["unit_left_dim"] = cyclo_str(left_dim(mv_unit(s)));
  return res;
}

json cmd_oracle(const Options& o, const Zoo& zoo) {
  if (o.suite != "q" && o.suite != "pivotal" && o.suite != "sliding" && o.suite != "super" &&
      o.suite != "uequiv")
    throw Error(Error::Kind::UnknownSuite, "unknown oracle suite: " + o.suite);
  std::string gname = o.group.empty() ? "S3" : o.group;
  const FiniteGroup& g = zoo.group(gname);
  long m = session_conductor(g, zoo.irreps(gname));
  std::mt19937_64 rng(o.seed);
  json checks = json::array();
  bool all = true;
  auto add = [&](const std::string& name, bool ok, const std::string& witness = "") {
    json c{{"name", name}, {"pass", ok}};
    if (!ok && !witness.empty()) c["witness"] = witness;
    checks.push_back(c);
    all = all && ok;
  };

  if (o.suite == "q") {
    for (int t = 0; t < o.trials; ++t) {
      EquivariantBundle v = random_bundle(g, zoo, m, rng, 4);
      EquivariantBundle w = random_bundle(g, zoo, m, rng, 4);
      QReport rep = q_projector_check(v, w, false);
      add("q pair " + std::to_string(t), rep.pass(),
          rep.idempotent ? (rep.equivariant ? "graded dims" : "equivariance") : "idempotence");
    }
  } else if (o.suite == "super") {
    if (!g.has_z()) throw Error(Error::Kind::ZMissing, "suite super needs a supergroup");
    for (int t = 0; t < o.trials; ++t) {
      EquivariantBundle v = random_bundle(g, zoo, m, rng, 4);
      EquivariantBundle w = random_bundle(g, zoo, m, rng, 4);
      QReport rep = q_projector_check(v, w, true);
      add("super q pair " + std::to_string(t), rep.pass());
    }
  } else if (o.suite == "pivotal") {
    EquivariantBundle unit = unit_reduced(g);
    PivotalReport ur = pivotal_checks(unit, zoo);
    add("pivotal unit", ur.pass, ur.failures.empty() ? "" : ur.failures.front());
    for (int t = 0; t < std::max(1, o.trials / 4); ++t) {
      EquivariantBundle v = random_bundle(g, zoo, m, rng, 4);
      PivotalReport rep = pivotal_checks(v, zoo);
      add("pivotal bundle " + std::to_string(t), rep.pass,
          rep.failures.empty() ? "" : rep.failures.front());
    }
  } else if (o.suite == "sliding") {
    const IrrepZoo& iz = zoo.irreps(gname);
    for (const auto& ir : iz.irreps) {
      GModule strand = lift_module(ir.module, m);
      add("sliding strand " + ir.label, sliding_check(strand, iz, m));
    }
    auto [a, b] = regular_loop_traces(iz, m);
    add("closed regular loop colorings agree", a == b);
  } else if (o.suite == "uequiv") {
    add("unit", u_equivariance_check(unit_reduced(g)));
    for (int t = 0; t < std::max(1, o.trials / 4); ++t) {
      EquivariantBundle v = random_bundle(g, zoo, m, rng, 4);
      add("bundle " + std::to_string(t), u_equivariance_check(v));
    }
  }
  json res;
  res["suite"] = o.suite;
  res["group"] = gname;
  res["trials"] = o.trials;
  res["checks"] = checks;
  res["all_pass"] = all;
  return res;
}

std::string render_table(const json& report) {
  std::ostringstream os;
  const json& res = report.at("results");
  os << "command: " << report.at("command").get<std::string>() << "\n";
  std::function<void(const std::string&, const json&, int)> walk =
      [&](const std::string& key, const json& v, int depth) {
        std::string pad(size_t(depth) * 2, ' ');
        if (v.is_object()) {
          if (!key.empty()) os << pad << key << ":\n";
          for (const auto& [k, val] : v.items()) walk(k, val, depth + (key.empty() ? 0 : 1));
        } else if (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array())) {
          os << pad << key << ": [" << v.size() << " entries]\n";
          if (key == "checks")
            for (const auto& entry : v)
              os << pad << "  " << (entry.at("pass").get<bool>() ? "[pass] " : "[FAIL] ")
                 << entry.at("name").get<std::string>() << "\n";
        } else {
          os << pad << key << ": " << v.dump() << "\n";
        }
      };
  walk("", res, 0);
  return os.str();
}

}  // namespace

CliResult cli_run(const std::vector<std::string>& args) {
  CliResult out;
  Options o;
  try {
    o = parse_args(args);
  } catch (const UsageError& e) {
    out.exit_code = 2;
    out.output = std::string("usage error: ") + e.what() + "\n";
    return out;
  }
  auto t0 = std::chrono::steady_clock::now();
  try {
    std::string zoo_source = "none";
    std::shared_ptr<Zoo> zoo;
    if (o.command != "matvec") zoo = resolve_zoo(o, zoo_source);
    json report = report_skeleton(o, zoo_source);
    json res;
    if (o.command == "group-info") res = cmd_group_info(o, *zoo);
    else if (o.command == "fusion") res = cmd_fusion(o, *zoo);
    else if (o.command == "torus") res = cmd_torus(o, *zoo);
    else if (o.command == "matvec") res = cmd_matvec(o);
    else res = cmd_oracle(o, *zoo);
    report["results"] = res;
    auto t1 = std::chrono::steady_clock::now();
    report["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

    bool check_failed = false;
    if (res.contains("all_pass") && !res["all_pass"].get<bool>()) check_failed = true;
    if (res.contains("equal") && !res["equal"].get<bool>()) check_failed = true;
    if (res.contains("dim_consistency") && !res["dim_consistency"].get<bool>())
      check_failed = true;
    if (res.contains("dual_consistency") && !res["dual_consistency"].get<bool>())
      check_failed = true;
    out.exit_code = check_failed ? 1 : 0;
    out.output = (o.format == "json") ? report.dump(1) + "\n" : render_table(report);
  } catch (const Error& e) {
    out.exit_code = 2;
    out.output = std::string("error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    out.exit_code = 2;
    out.output = std::string("error: ") + e.what() + "\n";
  }
  return out;
}

}  // namespace redten
