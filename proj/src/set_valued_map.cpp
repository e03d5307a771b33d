#include "setstab/set_valued_map.hpp"

#include <stdexcept>

namespace setstab {

SetValuedMap::SetValuedMap(UniversePtr domain, UniversePtr codomain, std::vector<Subset> rows)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), rows_(std::move(rows)) {
  if (rows_.size() != domain_->size)
    throw std::invalid_argument("map needs exactly one row per domain element");
  for (const auto& r : rows_)
    if (!same_universe(r.universe(), codomain_))
      throw std::invalid_argument("map row over a different codomain");
}

SetValuedMap SetValuedMap::constant_empty(UniversePtr domain, UniversePtr codomain) {
  std::vector<Subset> rows(domain->size, Subset::empty(codomain));
  return SetValuedMap(std::move(domain), std::move(codomain), std::move(rows));
}

SetValuedMap SetValuedMap::identity(UniversePtr universe) {
  std::vector<Subset> rows;
  rows.reserve(universe->size);
  for (std::size_t i = 0; i < universe->size; ++i)
    rows.push_back(Subset::singleton(universe, i));
  return SetValuedMap(universe, universe, std::move(rows));
}

void SetValuedMap::set_row(std::size_t d, Subset value) {
  if (!same_universe(value.universe(), codomain_))
    throw std::invalid_argument("map row over a different codomain");
  rows_.at(d) = std::move(value);
}

Subset image_of_set(const SetValuedMap& m, const Subset& d) {
  if (!same_universe(d.universe(), m.domain()))
    throw std::invalid_argument("image argument over a different universe");
  Subset out = Subset::empty(m.codomain());
  for (std::size_t i : d.members()) out = out | m.row(i);
  return out;
}

Subset upper_inverse(const SetValuedMap& m, const Subset& y) {
  if (!same_universe(y.universe(), m.codomain()))
    throw std::invalid_argument("upper inverse argument over a different universe");
  Subset out = Subset::empty(m.domain());
  for (std::size_t i = 0; i < m.domain()->size; ++i)
    if (m.row(i).subset_of(y)) out.set(i);
  return out;
}

Subset lower_inverse(const SetValuedMap& m, const Subset& y) {
  if (!same_universe(y.universe(), m.codomain()))
    throw std::invalid_argument("lower inverse argument over a different universe");
  Subset out = Subset::empty(m.domain());
  for (std::size_t i = 0; i < m.domain()->size; ++i)
    if (m.row(i).intersects(y)) out.set(i);
  return out;
}

SetValuedMap compose_maps(const SetValuedMap& m1, const SetValuedMap& m2) {
  if (!same_universe(m1.codomain(), m2.domain()))
    throw std::invalid_argument("composition needs codomain(m1) = domain(m2)");
  std::vector<Subset> rows;
  rows.reserve(m1.domain()->size);
  for (std::size_t i = 0; i < m1.domain()->size; ++i)
    rows.push_back(image_of_set(m2, m1.row(i)));
  return SetValuedMap(m1.domain(), m2.codomain(), std::move(rows));
}

SetValuedMap product_map(const SetValuedMap& m1, const SetValuedMap& m2) {
  if (!same_universe(m1.domain(), m2.domain()))
    throw std::invalid_argument("product map needs a shared domain");
  UniversePtr pc = pair_encode(m1.codomain(), m2.codomain());
  const std::size_t n2 = m2.codomain()->size;
  std::vector<Subset> rows;
  rows.reserve(m1.domain()->size);
  for (std::size_t d = 0; d < m1.domain()->size; ++d) {
    Subset r(pc);
    for (std::size_t i : m1.row(d).members())
      for (std::size_t j : m2.row(d).members()) r.set(pair_index(i, j, n2));
    rows.push_back(std::move(r));
  }
  return SetValuedMap(m1.domain(), pc, std::move(rows));
}

}  // namespace setstab
