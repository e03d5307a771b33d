#include "setstab/set_family.hpp"

#include <algorithm>
#include <stdexcept>

namespace setstab {

namespace {

std::vector<Subset> canonicalize(FamilyKind kind, std::vector<Subset> sets) {
  if (sets.empty()) throw std::invalid_argument("families must be nonempty");
  if (kind != FamilyKind::Explicit) {
    // Keep only the minimal (up) or maximal (down) sets; comparable generators
    // are absorbed.
    std::vector<Subset> kept;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < sets.size() && !dominated; ++j) {
        if (i == j) continue;
        const bool covers = kind == FamilyKind::Up ? sets[j].subset_of(sets[i])
                                                   : sets[i].subset_of(sets[j]);
        if (covers && sets[i] != sets[j]) dominated = true;
        if (sets[i] == sets[j] && j < i) dominated = true;  // drop duplicates
      }
      if (!dominated) kept.push_back(sets[i]);
    }
    sets = std::move(kept);
  }
  std::sort(sets.begin(), sets.end(), canonical_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return sets;
}

std::uint64_t mask_of(const Subset& s) { return s.low_word(); }

// Flat membership bitmap over all 2^n masks for the explicit axiom scans.
struct MaskSet {
  std::vector<bool> present;
  bool contains(std::uint64_t m) const { return present[m]; }
};

MaskSet to_masks(const std::vector<Subset>& sets, std::size_t n) {
  MaskSet ms;
  ms.present.assign(std::size_t{1} << n, false);
  for (const auto& s : sets) ms.present[mask_of(s)] = true;
  return ms;
}

void require_enumerable(const UniversePtr& u, const Limits& limits, const char* what) {
  if (u->size >= 64 || (std::uint64_t{1} << u->size) > limits.enum_ceiling)
    throw EnumerationRefused(std::string("enumeration refused: ") + what + " over universe of size " +
                             std::to_string(u->size));
}

}  // namespace

SetFamily::SetFamily(FamilyKind kind, std::vector<Subset> sets) : kind_(kind) {
  if (sets.empty()) throw std::invalid_argument("families must be nonempty");
  universe_ = sets.front().universe();
  for (const auto& s : sets)
    if (!same_universe(s.universe(), universe_))
      throw std::invalid_argument("family members over different universes");
  sets_ = canonicalize(kind, std::move(sets));
}

SetFamily SetFamily::explicit_family(std::vector<Subset> sets) {
  return SetFamily(FamilyKind::Explicit, std::move(sets));
}
SetFamily SetFamily::up_generated(std::vector<Subset> generators) {
  return SetFamily(FamilyKind::Up, std::move(generators));
}
SetFamily SetFamily::down_generated(std::vector<Subset> generators) {
  return SetFamily(FamilyKind::Down, std::move(generators));
}

bool SetFamily::operator==(const SetFamily& other) const {
  return kind_ == other.kind_ && same_universe(universe_, other.universe_) && sets_ == other.sets_;
}

SetFamily up_closure(const SetFamily& generators) {
  return SetFamily::up_generated(generators.sets());
}

SetFamily down_closure(const SetFamily& generators) {
  return SetFamily::down_generated(generators.sets());
}

bool member_of(const SetFamily& f, const Subset& s) {
  if (!same_universe(f.universe(), s.universe()))
    throw std::invalid_argument("membership query over a different universe");
  switch (f.kind()) {
    case FamilyKind::Explicit:
      for (const auto& m : f.sets())
        if (m == s) return true;
      return false;
    case FamilyKind::Up:
      for (const auto& g : f.sets())
        if (g.subset_of(s)) return true;
      return false;
    case FamilyKind::Down:
      for (const auto& g : f.sets())
        if (s.subset_of(g)) return true;
      return false;
  }
  return false;
}

std::vector<Subset> enumerate_family(const SetFamily& f, const Limits& limits) {
  if (f.kind() == FamilyKind::Explicit) return f.sets();
  require_enumerable(f.universe(), limits, "family extension");
  const std::size_t n = f.universe()->size;
  std::vector<std::uint64_t> gens;
  for (const auto& g : f.sets()) gens.push_back(mask_of(g));
  std::vector<std::uint64_t> hits;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < total; ++m) {
    bool in = false;
    if (f.kind() == FamilyKind::Up) {
      for (auto g : gens)
        if ((g & m) == g) {
          in = true;
          break;
        }
    } else {
      for (auto g : gens)
        if ((m & ~g) == 0) {
          in = true;
          break;
        }
    }
    if (in) hits.push_back(m);
  }
  std::vector<Subset> out;
  out.reserve(hits.size());
  for (auto m : hits) out.push_back(subset_from_mask(f.universe(), m));
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

namespace {

// Closure under supersets reduces to closure under single-bit additions, and
// once that holds the pairwise-intersection axiom only needs the minimal
// members (any other intersection sits above a minimal one).
Verdict filter_axioms_explicit(const SetFamily& f, const Limits& limits) {
  require_enumerable(f.universe(), limits, "filter axiom scan");
  const std::size_t n = f.universe()->size;
  MaskSet ms = to_masks(f.sets(), n);
  for (const auto& a : f.sets()) {
    const std::uint64_t am = mask_of(a);
    for (std::size_t i = 0; i < n; ++i) {
      if ((am >> i) & 1) continue;
      if (!ms.contains(am | (std::uint64_t{1} << i)))
        return Verdict::fail()
            .with("member", a)
            .with("missing superset", subset_from_mask(f.universe(), am | (std::uint64_t{1} << i)))
            .note("not closed under supersets");
    }
  }
  std::vector<std::uint64_t> minimal;
  for (const auto& a : f.sets()) {
    const std::uint64_t am = mask_of(a);
    bool is_min = true;
    for (std::size_t i = 0; i < n && is_min; ++i)
      if (((am >> i) & 1) && ms.contains(am & ~(std::uint64_t{1} << i))) is_min = false;
    if (is_min) minimal.push_back(am);
  }
  for (std::uint64_t a : minimal)
    for (std::uint64_t b : minimal) {
      if (!ms.contains(a & b))
        return Verdict::fail()
            .with("first", subset_from_mask(f.universe(), a))
            .with("second", subset_from_mask(f.universe(), b))
            .note("pairwise intersection is not a member");
    }
  return Verdict::pass();
}

Verdict ideal_axioms_explicit(const SetFamily& f, const Limits& limits) {
  require_enumerable(f.universe(), limits, "ideal axiom scan");
  const std::size_t n = f.universe()->size;
  MaskSet ms = to_masks(f.sets(), n);
  for (const auto& a : f.sets()) {
    const std::uint64_t am = mask_of(a);
    for (std::size_t i = 0; i < n; ++i) {
      if (!((am >> i) & 1)) continue;
      if (!ms.contains(am & ~(std::uint64_t{1} << i)))
        return Verdict::fail()
            .with("member", a)
            .with("missing subset", subset_from_mask(f.universe(), am & ~(std::uint64_t{1} << i)))
            .note("not closed under subsets");
    }
  }
  std::vector<std::uint64_t> maximal;
  for (const auto& a : f.sets()) {
    const std::uint64_t am = mask_of(a);
    bool is_max = true;
    for (std::size_t i = 0; i < n && is_max; ++i)
      if (!((am >> i) & 1) && ms.contains(am | (std::uint64_t{1} << i))) is_max = false;
    if (is_max) maximal.push_back(am);
  }
  for (std::uint64_t a : maximal)
    for (std::uint64_t b : maximal) {
      if (!ms.contains(a | b))
        return Verdict::fail()
            .with("first", subset_from_mask(f.universe(), a))
            .with("second", subset_from_mask(f.universe(), b))
            .note("pairwise union is not a member");
    }
  return Verdict::pass();
}

void flag_improper_filter(const SetFamily& f, Verdict& v) {
  if (member_of(f, Subset::empty(f.universe())))
    v.note("improper filter: contains the empty set");
}

void flag_improper_ideal(const SetFamily& f, Verdict& v) {
  if (member_of(f, Subset::full(f.universe()))) v.note("improper ideal: contains the full set");
}

}  // namespace

Verdict is_filter(const SetFamily& f, const Limits& limits) {
  Verdict v;
  if (f.kind() == FamilyKind::Up) {
    // Superset closure is structural; only pairwise intersections need checking.
    v = Verdict::pass();
    for (const auto& a : f.sets())
      for (const auto& b : f.sets()) {
        if (!member_of(f, a & b)) {
          v = Verdict::fail().with("first", a).with("second", b).note(
              "generator intersection contains no generator");
          flag_improper_filter(f, v);
          return v;
        }
      }
  } else if (f.kind() == FamilyKind::Explicit) {
    v = filter_axioms_explicit(f, limits);
  } else {
    v = filter_axioms_explicit(SetFamily::explicit_family(enumerate_family(f, limits)), limits);
  }
  if (v.holds) flag_improper_filter(f, v);
  return v;
}

Verdict is_ideal(const SetFamily& f, const Limits& limits) {
  Verdict v;
  if (f.kind() == FamilyKind::Down) {
    v = Verdict::pass();
    for (const auto& a : f.sets())
      for (const auto& b : f.sets()) {
        if (!member_of(f, a | b)) {
          v = Verdict::fail().with("first", a).with("second", b).note(
              "generator union lies below no generator");
          flag_improper_ideal(f, v);
          return v;
        }
      }
  } else if (f.kind() == FamilyKind::Explicit) {
    v = ideal_axioms_explicit(f, limits);
  } else {
    v = ideal_axioms_explicit(SetFamily::explicit_family(enumerate_family(f, limits)), limits);
  }
  if (v.holds) flag_improper_ideal(f, v);
  return v;
}

bool is_filter_base(const SetFamily& f, const Limits& limits) {
  return is_filter(up_closure(f), limits).holds;
}

bool is_ideal_base(const SetFamily& f, const Limits& limits) {
  return is_ideal(down_closure(f), limits).holds;
}

SetFamily dualize(const SetFamily& f) {
  std::vector<Subset> comp;
  comp.reserve(f.sets().size());
  for (const auto& s : f.sets()) comp.push_back(complement(s));
  switch (f.kind()) {
    case FamilyKind::Explicit:
      return SetFamily::explicit_family(std::move(comp));
    case FamilyKind::Up:
      return SetFamily::down_generated(std::move(comp));
    case FamilyKind::Down:
      return SetFamily::up_generated(std::move(comp));
  }
  throw std::logic_error("unreachable");
}

SetFamily product_base(const SetFamily& f1, const SetFamily& f2) {
  UniversePtr pu = pair_encode(f1.universe(), f2.universe());
  const std::size_t n2 = f2.universe()->size;
  std::vector<Subset> rects;
  for (const auto& s1 : f1.sets())
    for (const auto& s2 : f2.sets()) {
      Subset r(pu);
      for (std::size_t i : s1.members())
        for (std::size_t j : s2.members()) r.set(pair_index(i, j, n2));
      rects.push_back(std::move(r));
    }
  return SetFamily::explicit_family(std::move(rects));
}

Subset family_union(const SetFamily& f) {
  if (f.kind() == FamilyKind::Up) return Subset::full(f.universe());
  Subset u = Subset::empty(f.universe());
  for (const auto& s : f.sets()) u = u | s;
  return u;
}

}  // namespace setstab
