#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "setstab/rational.hpp"

namespace setstab {

// Finite indexed ground set. Metadata is optional and enables the derived
// structures: coordinates give metric balls, magnitudes give sublevel sets,
// a partial order gives positivity cones.
struct Universe {
  std::size_t size = 0;
  std::optional<std::vector<std::string>> labels;
  std::optional<std::vector<std::vector<Rational>>> coordinates;
  std::optional<std::vector<Rational>> magnitude;
  // Row-major size*size matrix; order[i*size+j] != 0 means i <= j.
  std::optional<std::vector<std::uint8_t>> order;

  std::string label_of(std::size_t i) const;
  std::optional<std::size_t> index_of_label(const std::string& label) const;
  bool order_leq(std::size_t i, std::size_t j) const;

  bool operator==(const Universe& other) const;
};

using UniversePtr = std::shared_ptr<const Universe>;

// Validates invariants (metadata coverage, order axioms) and freezes the value.
UniversePtr make_universe(Universe u);

// Convenience factories.
UniversePtr make_universe(std::size_t size);
UniversePtr make_universe(std::vector<std::string> labels);

// Regular one-dimensional grid start, start+step, ... with coordinates,
// magnitudes |value| and value labels.
UniversePtr grid_universe(const Rational& start, const Rational& step, std::size_t count);

// Universes are compared structurally, so independently built but identical
// product universes interoperate.
bool same_universe(const UniversePtr& a, const UniversePtr& b);

// Product universe with row-major element indexing. Labels become "(a,b)",
// coordinates concatenate, magnitudes combine by max, orders componentwise.
UniversePtr pair_encode(const UniversePtr& u1, const UniversePtr& u2);
std::size_t pair_index(std::size_t i, std::size_t j, std::size_t size2);
std::pair<std::size_t, std::size_t> pair_split(std::size_t element, std::size_t size2);

}  // namespace setstab
