#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "setstab/universe.hpp"

namespace setstab {

// Fixed-length membership vector over a universe, stored as packed bits.
class Subset {
 public:
  explicit Subset(UniversePtr universe);

  static Subset empty(UniversePtr universe);
  static Subset full(UniversePtr universe);
  static Subset of(UniversePtr universe, const std::vector<std::size_t>& members);
  static Subset singleton(UniversePtr universe, std::size_t element);

  const UniversePtr& universe() const { return universe_; }
  std::size_t size() const { return universe_->size; }

  bool test(std::size_t i) const;
  void set(std::size_t i, bool value = true);

  std::size_t count() const;
  bool none() const;
  bool any() const { return !none(); }

  bool subset_of(const Subset& other) const;
  bool intersects(const Subset& other) const;

  Subset operator&(const Subset& other) const;
  Subset operator|(const Subset& other) const;
  bool operator==(const Subset& other) const;
  bool operator!=(const Subset& other) const { return !(*this == other); }

  std::vector<std::size_t> members() const;
  std::string str() const;

  // Low words of the membership vector; valid as a mask when size <= 64.
  std::uint64_t low_word() const { return bits_.empty() ? 0 : bits_[0]; }

 private:
  void check_compatible(const Subset& other) const;

  UniversePtr universe_;
  std::vector<std::uint64_t> bits_;
};

Subset complement(const Subset& s);

// Membership-vector order: the set lacking the first differing element is
// smaller. Canonical order sorts by cardinality first, then this order.
bool lexicographic_less(const Subset& a, const Subset& b);
bool canonical_less(const Subset& a, const Subset& b);

// Subset of a universe from a bitmask, for enumeration loops (size <= 64).
Subset subset_from_mask(const UniversePtr& universe, std::uint64_t mask);

}  // namespace setstab
