#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "redten/gmodule.hpp"
#include "redten/group.hpp"

namespace redten {

// Cross-reference: the centralizer of a class representative, matched to a
// zoo group by an explicit isomorphism (subgroup element index -> zoo group
// element index). Validated on load; never searched for at runtime.
struct CentralizerRef {
  int class_rep = 0;
  std::string group;
  std::vector<int> mapping;
};

class Zoo {
 public:
  const FiniteGroup& group(const std::string& name) const;
  const IrrepZoo& irreps(const std::string& name) const;
  const std::vector<CentralizerRef>& centralizers(const std::string& name) const;
  std::vector<std::string> group_names() const;
  bool has_group(const std::string& name) const;

  void add_group(std::unique_ptr<FiniteGroup> g);
  void set_irreps(const std::string& name, IrrepZoo z) { irreps_[name] = std::move(z); }
  void set_centralizers(const std::string& name, std::vector<CentralizerRef> c) {
    centralizers_[name] = std::move(c);
  }

 private:
  std::vector<std::unique_ptr<FiniteGroup>> store_;
  std::map<std::string, const FiniteGroup*> groups_;
  std::map<std::string, IrrepZoo> irreps_;
  std::map<std::string, std::vector<CentralizerRef>> centralizers_;
};

// The shipped zoo, constructed in code: Z2, Z3, Z4 (z = order-2 element),
// V4, S3, D4, Q8 (z = -1), with classical irreducible representations and
// centralizer cross-references.
std::shared_ptr<Zoo> builtin_zoo();

// JSON round trip. load_zoo revalidates everything: group axioms, zoo
// invariants via zoo_validate, and that each centralizer mapping is an
// isomorphism onto the referenced table.
std::string zoo_to_json(const Zoo& zoo);
std::shared_ptr<Zoo> zoo_from_json(const std::string& text);
std::shared_ptr<Zoo> load_zoo_file(const std::string& path);
void save_zoo_file(const Zoo& zoo, const std::string& path);

}  // namespace redten
