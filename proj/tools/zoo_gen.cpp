#include <fstream>
#include <iostream>

#include "redten/matvec.hpp"
#include "redten/zoo.hpp"

// Regenerates the shipped data files from the built-in constructions.
int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "data";
  auto zoo = redten::builtin_zoo();
  redten::save_zoo_file(*zoo, dir + "/zoo.json");
  std::cout << "wrote " << dir << "/zoo.json\n";

  auto write = [&](const std::string& name, const redten::FusionLabelSet& s) {
    std::ofstream out(dir + "/" + name);
    out << redten::label_set_to_json(s) << "\n";
    std::cout << "wrote " << dir << "/" << name << "\n";
  };
  write("labels_fib.json", redten::labels_fibonacci());
  write("labels_ising.json", redten::labels_ising());
  write("labels_reps3.json", redten::labels_from_dims({1, 1, 2}));
  return 0;
}
