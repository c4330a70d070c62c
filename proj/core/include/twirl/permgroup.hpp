#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "twirl/rational.hpp"

namespace twirl {

// Bijection on [0, degree), stored as the image array.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint16_t> images);
  static Permutation identity(int degree);
  // Disjoint-cycle notation on 1-based points, e.g. "(1,2,3)(4,5)"; "()" is
  // the identity.  Points above `degree` are rejected.
  static Permutation from_cycles(const std::string& text, int degree);

  int degree() const { return static_cast<int>(img_.size()); }
  std::uint16_t operator()(std::uint16_t x) const { return img_[x]; }
  const std::vector<std::uint16_t>& images() const { return img_; }

  bool is_identity() const;
  std::int64_t order() const;  // lcm of cycle lengths
  Permutation inverse() const;
  // (a * b)(x) = a(b(x)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

  std::string to_cycles() const;  // 1-based disjoint cycles, "()" for identity
  std::size_t hash() const;

 private:
  std::vector<std::uint16_t> img_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

// Conjugacy-class data of a finite permutation group, in the canonical class
// order: identity first, then ascending element order, ties by ascending
// class size, then by power-map profile, then by smallest representative.
struct ClassData {
  std::vector<Permutation> class_reps;
  std::vector<std::int64_t> class_sizes;
  std::vector<std::int64_t> element_orders;          // order of each class rep
  std::vector<int> inverse_map;                      // class -> class of inverses
  std::map<std::int64_t, std::vector<int>> power_maps;  // prime p | exponent -> map
  std::int64_t exponent = 1;                         // lcm of element orders

  int num_classes() const { return static_cast<int>(class_reps.size()); }
};

// Finite group generated by permutations.  Construction validates the
// generators; order comes from a base-and-strong-generators chain, element
// enumeration and class data are computed on demand and cached.
class PermGroup {
 public:
  PermGroup(int degree, std::vector<Permutation> generators, std::string name = "");

  int degree() const { return degree_; }
  const std::string& name() const { return name_; }
  const std::vector<Permutation>& generators() const { return gens_; }

  // Exact order from the stabilizer chain (no enumeration).
  const Integer& order() const;

  // All elements; throws CapExceeded when the group is larger than `cap`.
  const std::vector<Permutation>& elements(std::int64_t cap = 2000000) const;

  // Conjugacy classes in canonical order (requires enumerability under cap).
  const ClassData& classes(std::int64_t cap = 2000000) const;

  // Class index of an arbitrary element (requires classes()).
  int class_index(const Permutation& p) const;

 private:
  void build_chain() const;

  int degree_;
  std::string name_;
  std::vector<Permutation> gens_;

  mutable Integer order_ = 0;  // 0 = not yet computed
  mutable std::vector<Permutation> elements_;
  mutable std::unordered_map<Permutation, int, PermutationHash> class_of_;
  mutable ClassData classes_;
  mutable bool have_classes_ = false;
};

}  // namespace twirl
