#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "setstab/modelgen.hpp"
#include "setstab/set_family.hpp"
#include "setstab/set_valued_map.hpp"

// Shared generators and brute-force oracles. The oracles work on raw bitmasks
// and never call the generator-level shortcuts they are checking.
namespace testkit {

using namespace setstab;

using Rng = std::mt19937;

inline std::uint64_t random_mask(Rng& rng, std::size_t n, bool allow_empty = true) {
  std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t{1} << n) - 1);
  std::uint64_t m = dist(rng);
  if (!allow_empty)
    while (m == 0) m = dist(rng);
  return m;
}

inline Subset random_subset(const UniversePtr& u, Rng& rng, bool allow_empty = true) {
  return subset_from_mask(u, random_mask(rng, u->size, allow_empty));
}

inline std::vector<Subset> random_generators(const UniversePtr& u, Rng& rng, std::size_t count,
                                             bool allow_empty = true) {
  std::vector<Subset> gens;
  for (std::size_t i = 0; i < count; ++i) gens.push_back(random_subset(u, rng, allow_empty));
  return gens;
}

inline SetFamily random_family(const UniversePtr& u, Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<std::size_t> count(1, 3);
  std::vector<Subset> gens = random_generators(u, rng, count(rng));
  switch (kind(rng)) {
    case 0:
      return SetFamily::explicit_family(std::move(gens));
    case 1:
      return SetFamily::up_generated(std::move(gens));
    default:
      return SetFamily::down_generated(std::move(gens));
  }
}

// Closing random generators under pairwise intersection (resp. union) before
// taking the up (resp. down) closure yields a filter (resp. ideal). Seeds are
// usually anchored on a shared core so most samples are proper; the rest may
// collapse to the improper family, which is legal and worth covering.
inline SetFamily random_filter(const UniversePtr& u, Rng& rng, std::size_t seeds = 2) {
  std::uint64_t core = rng() % 4 ? random_mask(rng, u->size, /*allow_empty=*/false) : 0;
  std::set<std::uint64_t> masks;
  for (std::size_t i = 0; i < seeds; ++i) masks.insert(random_mask(rng, u->size) | core);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint64_t> snapshot(masks.begin(), masks.end());
    for (auto a : snapshot)
      for (auto b : snapshot)
        if (masks.insert(a & b).second) grew = true;
  }
  std::vector<Subset> gens;
  for (auto m : masks) gens.push_back(subset_from_mask(u, m));
  return SetFamily::up_generated(std::move(gens));
}

inline SetFamily random_ideal(const UniversePtr& u, Rng& rng, std::size_t seeds = 2) {
  const std::uint64_t full = (std::uint64_t{1} << u->size) - 1;
  std::uint64_t cap = rng() % 4 ? random_mask(rng, u->size) : full;
  std::set<std::uint64_t> masks;
  for (std::size_t i = 0; i < seeds; ++i) masks.insert(random_mask(rng, u->size) & cap);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint64_t> snapshot(masks.begin(), masks.end());
    for (auto a : snapshot)
      for (auto b : snapshot)
        if (masks.insert(a | b).second) grew = true;
  }
  std::vector<Subset> gens;
  for (auto m : masks) gens.push_back(subset_from_mask(u, m));
  return SetFamily::down_generated(std::move(gens));
}

inline SetValuedMap random_map(const UniversePtr& dom, const UniversePtr& cod, Rng& rng,
                               bool allow_empty_rows = true) {
  std::vector<Subset> rows;
  for (std::size_t i = 0; i < dom->size; ++i)
    rows.push_back(random_subset(cod, rng, allow_empty_rows));
  return SetValuedMap(dom, cod, std::move(rows));
}

namespace oracle {

// Extension of a family by definition, one membership test per bitmask.
inline std::vector<std::uint64_t> extension(const SetFamily& f) {
  const std::size_t n = f.universe()->size;
  std::vector<std::uint64_t> gens;
  for (const auto& g : f.sets()) gens.push_back(g.low_word());
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    bool in = false;
    for (auto g : gens) {
      switch (f.kind()) {
        case FamilyKind::Explicit:
          in = g == m;
          break;
        case FamilyKind::Up:
          in = (g & m) == g;
          break;
        case FamilyKind::Down:
          in = (m & ~g) == 0;
          break;
      }
      if (in) break;
    }
    if (in) out.push_back(m);
  }
  return out;
}

inline bool contains(const std::vector<std::uint64_t>& ext, std::uint64_t m) {
  for (auto e : ext)
    if (e == m) return true;
  return false;
}

// Verbatim axiom scans over an explicit extension.
inline bool is_filter(const std::vector<std::uint64_t>& ext, std::size_t n) {
  if (ext.empty()) return false;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (auto a : ext)
    for (std::uint64_t b = 0; b <= full; ++b)
      if ((a & b) == a && !contains(ext, b)) return false;
  for (auto a : ext)
    for (auto b : ext)
      if (!contains(ext, a & b)) return false;
  return true;
}

inline bool is_ideal(const std::vector<std::uint64_t>& ext, std::size_t n) {
  if (ext.empty()) return false;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (auto a : ext)
    for (std::uint64_t b = 0; b <= full; ++b)
      if ((b & ~a) == 0 && !contains(ext, b)) return false;
  for (auto a : ext)
    for (auto b : ext)
      if (!contains(ext, a | b)) return false;
  return true;
}

inline std::uint64_t image(const SetValuedMap& m, std::uint64_t set) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < m.domain()->size; ++i)
    if ((set >> i) & 1) out |= m.row(i).low_word();
  return out;
}

inline std::uint64_t upper_inv(const SetValuedMap& m, std::uint64_t set) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < m.domain()->size; ++i)
    if ((m.row(i).low_word() & ~set) == 0) out |= std::uint64_t{1} << i;
  return out;
}

inline std::uint64_t lower_inv(const SetValuedMap& m, std::uint64_t set) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < m.domain()->size; ++i)
    if (m.row(i).low_word() & set) out |= std::uint64_t{1} << i;
  return out;
}

inline bool forward_stable(const SetValuedMap& m, const SetFamily& a, const SetFamily& b) {
  auto ea = extension(a);
  auto eb = extension(b);
  for (auto am : ea)
    if (!contains(eb, image(m, am))) return false;
  return true;
}

inline bool backward_stable(const SetValuedMap& m, const SetFamily& a, const SetFamily& b) {
  auto ea = extension(a);
  auto eb = extension(b);
  for (auto bm : eb)
    if (!contains(ea, upper_inv(m, bm))) return false;
  return true;
}

inline bool weak_forward_stable(const SetValuedMap& m, const SetFamily& a, const SetFamily& b) {
  auto ea = extension(a);
  auto eb = extension(b);
  for (auto am : ea) {
    std::uint64_t img = image(m, am);
    bool met = false;
    for (auto bm : eb)
      if (img & bm) {
        met = true;
        break;
      }
    if (!met) return false;
  }
  return true;
}

inline bool weak_backward_stable(const SetValuedMap& m, const SetFamily& a, const SetFamily& b) {
  auto ea = extension(a);
  auto eb = extension(b);
  for (auto bm : eb)
    if (!contains(ea, lower_inv(m, bm))) return false;
  return true;
}

// Independent decision for "an onto gain assignment exists": by Hall's
// theorem a system of distinct representatives for the candidate sets
// {H : image(H) inside V} exists iff every subfamily of targets has at least
// as many candidates as members.
inline bool onto_assignment_exists(const SetValuedMap& m, const std::vector<Subset>& hd,
                                   const std::vector<Subset>& hy) {
  const std::size_t nd = hd.size(), ny = hy.size();
  if (ny > 20) throw std::runtime_error("oracle limited to small families");
  std::vector<std::uint64_t> cand(ny, 0);
  for (std::size_t v = 0; v < ny; ++v)
    for (std::size_t h = 0; h < nd; ++h)
      if (image_of_set(m, hd[h]).subset_of(hy[v])) cand[v] |= std::uint64_t{1} << h;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << ny); ++s) {
    std::uint64_t unioned = 0;
    int members = 0;
    for (std::size_t v = 0; v < ny; ++v)
      if ((s >> v) & 1) {
        unioned |= cand[v];
        ++members;
      }
    int available = 0;
    for (std::size_t h = 0; h < nd; ++h)
      if ((unioned >> h) & 1) ++available;
    if (available < members) return false;
  }
  return true;
}

inline bool compatible(const SetFamily& filter, const SetFamily& ideal) {
  auto ef = extension(filter);
  auto ei = extension(ideal);
  std::vector<std::uint64_t> h;
  for (auto m : ef)
    if (contains(ei, m)) h.push_back(m);
  for (auto x : ei) {
    bool ok = false;
    for (auto hm : h)
      if ((x & ~hm) == 0) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  for (auto x : ef) {
    bool ok = false;
    for (auto hm : h)
      if ((hm & ~x) == 0) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

}  // namespace oracle

}  // namespace testkit
