#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twirl/cyclotomic.hpp"
#include "twirl/permgroup.hpp"
#include "twirl/rational.hpp"

namespace twirl {

// Complete irreducible character table over exact cyclotomics, with the class
// metadata needed for all downstream arithmetic.  Classes follow the
// canonical order of ClassData; characters are sorted by ascending degree,
// then lexicographically on their value sequence.
struct CharacterTable {
  std::string name;
  Integer order = 1;
  std::int64_t exponent = 1;
  std::vector<std::int64_t> class_sizes;
  std::vector<std::int64_t> element_orders;
  std::map<std::int64_t, std::vector<int>> power_maps;  // prime -> class map
  std::vector<int> inverse_map;
  std::vector<std::vector<Cyclotomic>> characters;  // characters[i][class]

  int num_classes() const { return static_cast<int>(class_sizes.size()); }
  int num_characters() const { return static_cast<int>(characters.size()); }
  // Degree of character i (its value on the identity class).
  Integer degree(int i) const;
  std::vector<Integer> degrees() const;

  // Exact first/second orthogonality and basic shape checks; throws
  // ValidationError describing the first violation.
  void validate() const;
};

// Structure constants of the class-sum algebra for one class:
// entries[j][k] = #{(x, y) in C_i x C_j : x*y = rep_k}.
struct ClassMatrix {
  int index = 0;
  std::vector<std::vector<std::int64_t>> entries;
};

// All class matrices of the group (index order matches the class order).
std::vector<ClassMatrix> class_matrices(const PermGroup& g);

// Smallest prime p with p = 1 (mod exponent) and p > 2*sqrt(order).
std::int64_t dixon_prime(const Integer& order, std::int64_t exponent);

// Full character table via class-matrix eigenspace splitting over F_p and
// exact lifting through eigenvalue multiplicities.
CharacterTable compute_table(const PermGroup& g);

}  // namespace twirl
