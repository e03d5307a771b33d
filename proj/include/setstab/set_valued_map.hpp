#pragma once

#include <vector>

#include "setstab/set_family.hpp"
#include "setstab/subset.hpp"

namespace setstab {

// Total table from domain elements to subsets of the codomain. Rows may be
// empty; an element with an empty row lies in every upper inverse.
class SetValuedMap {
 public:
  SetValuedMap(UniversePtr domain, UniversePtr codomain, std::vector<Subset> rows);

  static SetValuedMap constant_empty(UniversePtr domain, UniversePtr codomain);
  static SetValuedMap identity(UniversePtr universe);

  const UniversePtr& domain() const { return domain_; }
  const UniversePtr& codomain() const { return codomain_; }
  const std::vector<Subset>& rows() const { return rows_; }
  const Subset& row(std::size_t d) const { return rows_.at(d); }

  void set_row(std::size_t d, Subset value);

 private:
  UniversePtr domain_;
  UniversePtr codomain_;
  std::vector<Subset> rows_;
};

// Union of rows over the members of d.
Subset image_of_set(const SetValuedMap& m, const Subset& d);

// Elements whose whole row lies inside y (vacuously including empty rows).
Subset upper_inverse(const SetValuedMap& m, const Subset& y);

// Elements whose row meets y.
Subset lower_inverse(const SetValuedMap& m, const Subset& y);

// Row d of the result is the m2-image of row d of m1.
SetValuedMap compose_maps(const SetValuedMap& m1, const SetValuedMap& m2);

// Row d is the rectangle m1(d) x m2(d) over the product codomain.
SetValuedMap product_map(const SetValuedMap& m1, const SetValuedMap& m2);

}  // namespace setstab
