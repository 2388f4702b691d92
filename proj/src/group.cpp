#include "redten/group.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace redten {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::optional<int> z,
                         std::string name)
    : mul_(std::move(table)), z_(z), name_(std::move(name)) {
  n_ = int(mul_.size());
  if (n_ == 0) throw Error(Error::Kind::BadInput, "empty multiplication table");
  for (const auto& row : mul_) {
    if (int(row.size()) != n_) throw Error(Error::Kind::BadInput, "table not square");
    for (int v : row)
      if (v < 0 || v >= n_) throw Error(Error::Kind::BadInput, "table entry out of range");
  }

  // identity: two-sided unit
  e_ = -1;
  for (int c = 0; c < n_; ++c) {
    bool ok = true;
    for (int g = 0; g < n_ && ok; ++g) ok = (mul(c, g) == g) && (mul(g, c) == g);
    if (ok) {
      e_ = c;
      break;
    }
  }
  if (e_ < 0) {
    // name a witness row without a unit column
    throw Error(Error::Kind::NoIdentity, "no two-sided identity element");
  }

  inv_.assign(size_t(n_), -1);
  for (int g = 0; g < n_; ++g) {
    for (int h = 0; h < n_; ++h) {
      if (mul(g, h) == e_ && mul(h, g) == e_) {
        inv_[size_t(g)] = h;
        break;
      }
    }
    if (inv_[size_t(g)] < 0)
      throw Error(Error::Kind::NoInverse, "element " + std::to_string(g) + " has no inverse");
  }

  if (n_ <= 256) {
    assoc_mode_ = AssocCheck::Exhaustive;
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw Error(Error::Kind::NotAssociative,
                        "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                            "," + std::to_string(c) + ")");
  } else {
    assoc_mode_ = AssocCheck::Sampled;
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_int_distribution<int> d(0, n_ - 1);
    long trials = 10L * long(n_) * long(n_);
    for (long t = 0; t < trials; ++t) {
      int a = d(rng), b = d(rng), c = d(rng);
      if (mul(mul(a, b), c) != mul(a, mul(b, c)))
        throw Error(Error::Kind::NotAssociative,
                    "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                        "," + std::to_string(c) + ")");
    }
  }

  if (z_) {
    int zv = *z_;
    if (zv < 0 || zv >= n_) throw Error(Error::Kind::BadInput, "z out of range");
    if (mul(zv, zv) != e_) throw Error(Error::Kind::BadInput, "z*z != identity");
    for (int g = 0; g < n_; ++g)
      if (mul(zv, g) != mul(g, zv)) throw Error(Error::Kind::BadInput, "z is not central");
  }
}

long FiniteGroup::exponent() const {
  long e = 1;
  for (int g = 0; g < n_; ++g) e = std::lcm(e, long(element_order(g)));
  return e;
}

int FiniteGroup::element_order(int g) const {
  int o = 1, x = g;
  while (x != e_) {
    x = mul(x, g);
    ++o;
  }
  return o;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<int> FiniteGroup::generators() const {
  std::vector<int> gens;
  std::vector<char> in_span(size_t(n_), 0);
  in_span[size_t(e_)] = 1;
  int covered = 1;
  while (covered < n_) {
    int next = -1;
    for (int g = 0; g < n_; ++g)
      if (!in_span[size_t(g)]) {
        next = g;
        break;
      }
    gens.push_back(next);
    // close under multiplication
    std::vector<int> frontier{next};
    in_span[size_t(next)] = 1;
    ++covered;
    while (!frontier.empty()) {
      std::vector<int> fresh;
      for (int a = 0; a < n_; ++a) {
        if (!in_span[size_t(a)]) continue;
        for (int f : frontier) {
          for (int prod : {mul(a, f), mul(f, a)}) {
            if (!in_span[size_t(prod)]) {
              in_span[size_t(prod)] = 1;
              ++covered;
              fresh.push_back(prod);
            }
          }
        }
      }
      frontier = std::move(fresh);
    }
  }
  return gens;
}

const std::vector<ConjClass>& FiniteGroup::conjugacy_classes() const {
  if (!classes_.empty()) return classes_;
  class_of_.assign(size_t(n_), -1);
  for (int g = 0; g < n_; ++g) {
    if (class_of_[size_t(g)] >= 0) continue;
    ConjClass cls;
    cls.representative = g;
    std::set<int> mem;
    for (int x = 0; x < n_; ++x) mem.insert(conj(x, g));
    cls.members.assign(mem.begin(), mem.end());
    int idx = int(classes_.size());
    for (int m : cls.members) class_of_[size_t(m)] = idx;
    classes_.push_back(std::move(cls));
  }
  return classes_;
}

int FiniteGroup::class_of(int g) const {
  conjugacy_classes();
  return class_of_[size_t(g)];
}

std::vector<int> FiniteGroup::centralizer(int g) const {
  std::vector<int> out;
  for (int x = 0; x < n_; ++x)
    if (mul(x, g) == mul(g, x)) out.push_back(x);
  return out;
}

CommutingPairs FiniteGroup::commuting_pairs() const {
  CommutingPairs cp;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (mul(a, b) == mul(b, a)) cp.pairs.emplace_back(a, b);
  return cp;
}

std::vector<DiagonalOrbit> FiniteGroup::diagonal_orbits(
    const std::vector<std::pair<int, int>>& pairs) const {
  std::set<std::pair<int, int>> todo(pairs.begin(), pairs.end());
  std::vector<DiagonalOrbit> orbits;
  while (!todo.empty()) {
    auto rep = *todo.begin();
    DiagonalOrbit orb;
    orb.representative = rep;
    std::set<std::pair<int, int>> mem;
    for (int x = 0; x < n_; ++x) mem.insert({conj(x, rep.first), conj(x, rep.second)});
    for (const auto& p : mem) {
      if (!todo.count(p))
        throw Error(Error::Kind::BadInput, "pair set not closed under simultaneous conjugation");
      todo.erase(p);
    }
    orb.members.assign(mem.begin(), mem.end());
    for (int x = 0; x < n_; ++x)
      if (mul(x, rep.first) == mul(rep.first, x) && mul(x, rep.second) == mul(rep.second, x))
        orb.stabilizer.push_back(x);
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

Subgroup subgroup_from_elements(const FiniteGroup& g, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::vector<int> to_sub(size_t(g.order()), -1);
  for (size_t i = 0; i < elements.size(); ++i) to_sub[size_t(elements[i])] = int(i);
  int k = int(elements.size());
  std::vector<std::vector<int>> table(size_t(k), std::vector<int>(size_t(k), -1));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      int p = g.mul(elements[size_t(a)], elements[size_t(b)]);
      int ps = to_sub[size_t(p)];
      if (ps < 0) throw Error(Error::Kind::BadInput, "element set not closed under mul");
      table[size_t(a)][size_t(b)] = ps;
    }
  std::optional<int> z;
  if (g.z() && to_sub[size_t(*g.z())] >= 0) z = to_sub[size_t(*g.z())];
  Subgroup s{FiniteGroup(std::move(table), z), std::move(elements), std::move(to_sub)};
  return s;
}

FiniteGroup group_from_table(std::vector<std::vector<int>> table, std::optional<int> z,
                             std::string name) {
  return FiniteGroup(std::move(table), z, std::move(name));
}

FiniteGroup builtin_cyclic(int n) {
  std::vector<std::vector<int>> t(size_t(n), std::vector<int>(size_t(n), 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[size_t(a)][size_t(b)] = (a + b) % n;
  return FiniteGroup(std::move(t), std::nullopt, "Z" + std::to_string(n));
}

FiniteGroup builtin_klein4() {
  // elements: (a,b) in Z2 x Z2 indexed 2a+b
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) t[size_t(x)][size_t(y)] = (x ^ y);
  return FiniteGroup(std::move(t), std::nullopt, "V4");
}

namespace {
std::vector<std::vector<int>> perm_group_table(const std::vector<std::vector<int>>& perms) {
  int n = int(perms.size());
  auto find = [&](const std::vector<int>& p) {
    for (int i = 0; i < n; ++i)
      if (perms[size_t(i)] == p) return i;
    return -1;
  };
  std::vector<std::vector<int>> t(size_t(n), std::vector<int>(size_t(n), 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // composition: (a after b)
      std::vector<int> comp(perms[size_t(a)].size());
      for (size_t i = 0; i < comp.size(); ++i)
        comp[i] = perms[size_t(a)][size_t(perms[size_t(b)][i])];
      t[size_t(a)][size_t(b)] = find(comp);
    }
  return t;
}
}  // namespace

FiniteGroup builtin_s3() {
  std::vector<std::vector<int>> perms = {
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0},
  };
  return FiniteGroup(perm_group_table(perms), std::nullopt, "S3");
}

FiniteGroup builtin_d4() {
  // r = rotation of the square, s = reflection; elements r^a s^b, index 4b+a
  auto idx = [](int a, int b) { return 4 * b + a; };
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a1 = 0; a1 < 4; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int a2 = 0; a2 < 4; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) {
          // (r^a1 s^b1)(r^a2 s^b2) = r^{a1 + (-1)^{b1} a2} s^{b1+b2}
          int a = ((a1 + (b1 ? -a2 : a2)) % 4 + 4) % 4;
          int b = (b1 + b2) % 2;
          t[size_t(idx(a1, b1))][size_t(idx(a2, b2))] = idx(a, b);
        }
  return FiniteGroup(std::move(t), std::nullopt, "D4");
}

FiniteGroup builtin_q8() {
  // 1,-1,i,-i,j,-j,k,-k as indices 0..7
  auto neg = [](int x) { return x ^ 1; };
  std::vector<std::vector<int>> t(8, std::vector<int>(8, -1));
  // base table on {1,i,j,k} with signs
  auto base = [&](int a, int b, int& prod, bool& minus) {
    // a,b in {0:1, 1:i, 2:j, 3:k}
    static const int p[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sg[4][4] = {{+1, +1, +1, +1},
                                 {+1, -1, +1, -1},
                                 {+1, -1, -1, +1},
                                 {+1, +1, -1, -1}};
    prod = p[a][b];
    minus = sg[a][b] < 0;
  };
  // sg above: i*i=-1, i*j=k, i*k=-j, j*i=-k, j*j=-1, j*k=i, k*i=j, k*j=-i, k*k=-1
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ba = a / 2, bb = b / 2;
      bool na = a % 2, nb = b % 2;
      int prod;
      bool minus;
      base(ba, bb, prod, minus);
      int r = 2 * prod;
      if (minus ^ na ^ nb) r = neg(r);
      t[size_t(a)][size_t(b)] = r;
    }
  return FiniteGroup(std::move(t), std::nullopt, "Q8");
}

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  int n = a.order();
  // brute force over assignments of a generating set
  std::vector<int> gens = a.generators();
  std::vector<int> img(size_t(n), -1);

  // enumerate candidate images for each generator (respecting orders), then
  // close and check
  std::vector<int> choice(gens.size(), 0);
  std::vector<std::vector<int>> cands(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    for (int c = 0; c < n; ++c)
      if (b.element_order(c) == a.element_order(gens[i])) cands[i].push_back(c);
    if (cands[i].empty()) return std::nullopt;
  }
  std::vector<size_t> pos(gens.size(), 0);
  while (true) {
    // attempt closure with current generator images
    std::fill(img.begin(), img.end(), -1);
    img[size_t(a.identity())] = b.identity();
    bool ok = true;
    // BFS over words in generators
    std::vector<int> frontier{a.identity()};
    while (ok && !frontier.empty()) {
      std::vector<int> fresh;
      for (int x : frontier) {
        for (size_t gi = 0; gi < gens.size(); ++gi) {
          int xa = a.mul(x, gens[gi]);
          int xb = b.mul(img[size_t(x)], cands[gi][pos[gi]]);
          if (img[size_t(xa)] < 0) {
            img[size_t(xa)] = xb;
            fresh.push_back(xa);
          } else if (img[size_t(xa)] != xb) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      frontier = std::move(fresh);
    }
    if (ok) {
      // must be a bijective homomorphism
      std::vector<char> seen(size_t(n), 0);
      for (int x = 0; x < n && ok; ++x) {
        if (img[size_t(x)] < 0 || seen[size_t(img[size_t(x)])]) ok = false;
        if (ok) seen[size_t(img[size_t(x)])] = 1;
      }
      for (int x = 0; x < n && ok; ++x)
        for (int y = 0; y < n && ok; ++y)
          if (img[size_t(a.mul(x, y))] != b.mul(img[size_t(x)], img[size_t(y)])) ok = false;
      if (ok) return img;
    }
    // advance the odometer
    size_t i = 0;
    for (; i < gens.size(); ++i) {
      if (++pos[i] < cands[i].size()) break;
      pos[i] = 0;
    }
    if (i == gens.size()) return std::nullopt;
  }
}

}  // namespace redten
