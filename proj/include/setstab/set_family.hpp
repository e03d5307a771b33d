#pragma once

#include <vector>

#include "setstab/subset.hpp"
#include "setstab/verdict.hpp"

namespace setstab {

// A family of subsets is stored either explicitly or through a generator
// antichain together with the closure direction. The logical extension of an
// up-generated family is every superset of some generator, of a down-generated
// family every subset of some generator. Generator lists are canonicalized to
// the antichain of minimal (up) or maximal (down) sets, sorted by cardinality
// then membership vector, so equal extensions have identical representations.
enum class FamilyKind { Explicit, Up, Down };

class SetFamily {
 public:
  SetFamily(FamilyKind kind, std::vector<Subset> sets);

  static SetFamily explicit_family(std::vector<Subset> sets);
  static SetFamily up_generated(std::vector<Subset> generators);
  static SetFamily down_generated(std::vector<Subset> generators);

  FamilyKind kind() const { return kind_; }
  // Explicit members, or the canonical generator antichain.
  const std::vector<Subset>& sets() const { return sets_; }
  const UniversePtr& universe() const { return universe_; }

  bool operator==(const SetFamily& other) const;

 private:
  FamilyKind kind_;
  UniversePtr universe_;
  std::vector<Subset> sets_;
};

// Closure of the listed sets of `generators` (members if explicit, the stored
// antichain otherwise).
SetFamily up_closure(const SetFamily& generators);
SetFamily down_closure(const SetFamily& generators);

bool member_of(const SetFamily& f, const Subset& s);

// Full extension in canonical order. Generated families require
// 2^size <= limits.enum_ceiling.
std::vector<Subset> enumerate_family(const SetFamily& f, const Limits& limits = {});

// Filter axioms: nonempty, closed under supersets, closed under pairwise
// intersection. For up-generated families this reduces to: every pairwise
// generator intersection contains a generator.
Verdict is_filter(const SetFamily& f, const Limits& limits = {});

// Ideal axioms: nonempty, closed under subsets and pairwise unions. For
// down-generated families: every pairwise generator union lies below a
// generator.
Verdict is_ideal(const SetFamily& f, const Limits& limits = {});

bool is_filter_base(const SetFamily& f, const Limits& limits = {});
bool is_ideal_base(const SetFamily& f, const Limits& limits = {});

// Family of complements. Exchanges filters and ideals.
SetFamily dualize(const SetFamily& f);

// All rectangles S1 x S2 of listed sets, as an explicit base over the product
// universe. Not closed; close with up_closure/down_closure as needed.
SetFamily product_base(const SetFamily& f1, const SetFamily& f2);

// Union of all members of the extension.
Subset family_union(const SetFamily& f);

}  // namespace setstab
