#include "setstab/stability.hpp"

#include <algorithm>
#include <stdexcept>

namespace setstab {

namespace {

void check_map_families(const SetValuedMap& m, const SetFamily& a, const SetFamily& b) {
  if (!same_universe(a.universe(), m.domain()))
    throw std::invalid_argument("family a must live over the map domain");
  if (!same_universe(b.universe(), m.codomain()))
    throw std::invalid_argument("family b must live over the map codomain");
}

bool rows_all_nonempty(const SetValuedMap& m) {
  for (const auto& r : m.rows())
    if (r.none()) return false;
  return true;
}

void flag_empty_hinge(const SetFamily& a, Verdict& v) {
  if (member_of(a, Subset::empty(a.universe())))
    v.note("family contains the empty set; the verdict covers it");
}

// Axiom gates for the generator reductions; a family too large to scan simply
// disables the shortcut instead of failing the whole query.
bool passes_filter_axioms(const SetFamily& f, const Limits& limits) {
  try {
    return is_filter(f, limits).holds;
  } catch (const EnumerationRefused&) {
    return false;
  }
}

bool passes_ideal_axioms(const SetFamily& f, const Limits& limits) {
  try {
    return is_ideal(f, limits).holds;
  } catch (const EnumerationRefused&) {
    return false;
  }
}

}  // namespace

Verdict is_forward_stable(const SetValuedMap& m, const SetFamily& a, const SetFamily& b,
                          const Limits& limits) {
  check_map_families(m, a, b);
  // Images are monotone, so when b is down-closed the generators of a decide
  // the whole down closure.
  if (a.kind() == FamilyKind::Down && passes_ideal_axioms(b, limits)) {
    for (const auto& g : a.sets()) {
      Subset img = image_of_set(m, g);
      if (!member_of(b, img))
        return Verdict::fail().with("A", g).with("image", img).note("image escapes b");
    }
    Verdict v = Verdict::pass();
    flag_empty_hinge(a, v);
    return v;
  }
  for (const auto& member : enumerate_family(a, limits)) {
    Subset img = image_of_set(m, member);
    if (!member_of(b, img))
      return Verdict::fail().with("A", member).with("image", img).note("image escapes b");
  }
  Verdict v = Verdict::pass();
  flag_empty_hinge(a, v);
  return v;
}

Verdict is_backward_stable(const SetValuedMap& m, const SetFamily& a, const SetFamily& b,
                           const Limits& limits) {
  check_map_families(m, a, b);
  // Upper inverses are monotone, so when a is up-closed the generators of b
  // decide the whole up closure.
  if (b.kind() == FamilyKind::Up && passes_filter_axioms(a, limits)) {
    for (const auto& g : b.sets()) {
      Subset pre = upper_inverse(m, g);
      if (!member_of(a, pre))
        return Verdict::fail().with("B", g).with("upper inverse", pre).note(
            "upper inverse escapes a");
    }
    Verdict v = Verdict::pass();
    if (member_of(a, Subset::empty(a.universe()))) v.note("filter a is improper");
    if (!rows_all_nonempty(m)) v.note("map has empty rows; they lie in every upper inverse");
    return v;
  }
  for (const auto& member : enumerate_family(b, limits)) {
    Subset pre = upper_inverse(m, member);
    if (!member_of(a, pre))
      return Verdict::fail().with("B", member).with("upper inverse", pre).note(
          "upper inverse escapes a");
  }
  Verdict v = Verdict::pass();
  if (!rows_all_nonempty(m)) v.note("map has empty rows; they lie in every upper inverse");
  return v;
}

namespace {

// Exact test for "some member of f meets s" without enumerating f: an
// up-generated family always has the full universe as a member, and any
// member of a down-generated family meeting s sits inside a generator that
// then meets s as well.
bool some_member_meets(const SetFamily& f, const Subset& s) {
  switch (f.kind()) {
    case FamilyKind::Explicit:
      for (const auto& m : f.sets())
        if (s.intersects(m)) return true;
      return false;
    case FamilyKind::Up:
      return s.any();
    case FamilyKind::Down:
      for (const auto& g : f.sets())
        if (s.intersects(g)) return true;
      return false;
  }
  return false;
}

}  // namespace

Verdict is_weak_forward_stable(const SetValuedMap& m, const SetFamily& a, const SetFamily& b,
                               const Limits& limits) {
  check_map_families(m, a, b);
  bool all_failures_empty_image = true;
  std::optional<Subset> failing;
  for (const auto& member : enumerate_family(a, limits)) {
    Subset img = image_of_set(m, member);
    if (!some_member_meets(b, img)) {
      if (!failing) failing = member;
      if (img.any()) all_failures_empty_image = false;
    }
  }
  if (!failing) return Verdict::pass();
  Verdict v = Verdict::fail().with("A", *failing).note("image meets no member of b");
  if (all_failures_empty_image) v.note("every failing member has an empty image");
  return v;
}

Verdict is_weak_backward_stable(const SetValuedMap& m, const SetFamily& a, const SetFamily& b,
                                const Limits& limits) {
  check_map_families(m, a, b);
  if (b.kind() == FamilyKind::Up && passes_filter_axioms(a, limits)) {
    for (const auto& g : b.sets()) {
      Subset pre = lower_inverse(m, g);
      if (!member_of(a, pre))
        return Verdict::fail().with("B", g).with("lower inverse", pre).note(
            "lower inverse escapes a");
    }
    return Verdict::pass();
  }
  for (const auto& member : enumerate_family(b, limits)) {
    Subset pre = lower_inverse(m, member);
    if (!member_of(a, pre))
      return Verdict::fail().with("B", member).with("lower inverse", pre).note(
          "lower inverse escapes a");
  }
  return Verdict::pass();
}

Verdict is_globally_stable(const SetValuedMap& m, const SetFamily& filter_d,
                           const SetFamily& ideal_d, const SetFamily& filter_y,
                           const SetFamily& ideal_y, const Limits& limits) {
  if (!is_filter(filter_d, limits).holds)
    throw std::invalid_argument("domain filter fails the filter axioms");
  if (!is_ideal(ideal_d, limits).holds)
    throw std::invalid_argument("domain ideal fails the ideal axioms");
  if (!is_filter(filter_y, limits).holds)
    throw std::invalid_argument("codomain filter fails the filter axioms");
  if (!is_ideal(ideal_y, limits).holds)
    throw std::invalid_argument("codomain ideal fails the ideal axioms");
  Verdict back = is_backward_stable(m, filter_d, filter_y, limits);
  Verdict fwd = is_forward_stable(m, ideal_d, ideal_y, limits);
  return Verdict::both("backward", back, "forward", fwd);
}

namespace {

bool in_h(const SetFamily& filter, const SetFamily& ideal, const Subset& s) {
  return member_of(filter, s) && member_of(ideal, s);
}

}  // namespace

Verdict is_compatible(const SetFamily& filter, const SetFamily& ideal, const Limits& limits) {
  if (!same_universe(filter.universe(), ideal.universe()))
    throw std::invalid_argument("filter and ideal must share a universe");
  if (!is_filter(filter, limits).holds)
    throw std::invalid_argument("first argument fails the filter axioms");
  if (!is_ideal(ideal, limits).holds)
    throw std::invalid_argument("second argument fails the ideal axioms");

  const bool gen_path = filter.kind() == FamilyKind::Up && ideal.kind() == FamilyKind::Down;
  if (gen_path) {
    // Below-H condition: a generator of the ideal joined with some filter
    // generator must stay inside the ideal; that join is the H witness.
    for (const auto& gi : ideal.sets()) {
      bool ok = false;
      for (const auto& gf : filter.sets())
        if (member_of(ideal, gi | gf)) {
          ok = true;
          break;
        }
      if (!ok)
        return Verdict::fail().with("ideal member", gi).note(
            "no member of the intersection contains it");
    }
    // Above-H condition: a filter generator met with some ideal generator must
    // stay inside the filter.
    for (const auto& gf : filter.sets()) {
      bool ok = false;
      for (const auto& gi : ideal.sets())
        if (member_of(filter, gf & gi)) {
          ok = true;
          break;
        }
      if (!ok)
        return Verdict::fail().with("filter member", gf).note(
            "no member of the intersection lies inside it");
    }
    return Verdict::pass();
  }

  std::vector<Subset> h = intersection_h(filter, ideal, limits);
  for (const auto& x : enumerate_family(ideal, limits)) {
    bool ok = false;
    for (const auto& hm : h)
      if (x.subset_of(hm)) {
        ok = true;
        break;
      }
    if (!ok)
      return Verdict::fail().with("ideal member", x).note(
          "no member of the intersection contains it");
  }
  for (const auto& x : enumerate_family(filter, limits)) {
    bool ok = false;
    for (const auto& hm : h)
      if (hm.subset_of(x)) {
        ok = true;
        break;
      }
    if (!ok)
      return Verdict::fail().with("filter member", x).note(
          "no member of the intersection lies inside it");
  }
  return Verdict::pass();
}

std::vector<Subset> intersection_h(const SetFamily& filter, const SetFamily& ideal,
                                   const Limits& limits) {
  if (!same_universe(filter.universe(), ideal.universe()))
    throw std::invalid_argument("filter and ideal must share a universe");
  const UniversePtr& u = filter.universe();
  if (u->size >= 64 || (std::uint64_t{1} << u->size) > limits.enum_ceiling)
    throw EnumerationRefused("enumeration refused: intersection over universe of size " +
                             std::to_string(u->size));
  std::vector<Subset> out;
  const std::uint64_t total = std::uint64_t{1} << u->size;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Subset s = subset_from_mask(u, mask);
    if (in_h(filter, ideal, s)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

AlphaResult construct_alpha(const SetValuedMap& m, const SetFamily& filter_d,
                            const SetFamily& ideal_d, const SetFamily& filter_y,
                            const SetFamily& ideal_y, const Limits& limits) {
  Verdict compat_d = is_compatible(filter_d, ideal_d, limits);
  if (!compat_d.holds) throw std::invalid_argument("incompatible families over the domain");
  Verdict compat_y = is_compatible(filter_y, ideal_y, limits);
  if (!compat_y.holds) throw std::invalid_argument("incompatible families over the codomain");

  Verdict global = is_globally_stable(m, filter_d, ideal_d, filter_y, ideal_y, limits);
  if (!global.holds) {
    Verdict v = global;
    v.notes.insert(v.notes.begin(), "not globally stable");
    return AlphaResult{std::nullopt, std::move(v)};
  }

  AlphaMap alpha;
  alpha.domain_family = intersection_h(filter_d, ideal_d, limits);
  alpha.codomain_family = intersection_h(filter_y, ideal_y, limits);
  const std::size_t nd = alpha.domain_family.size();
  const std::size_t ny = alpha.codomain_family.size();

  // Candidate domain members per codomain member V: those with image inside V.
  std::vector<std::vector<std::size_t>> candidates(ny);
  std::vector<Subset> images;
  images.reserve(nd);
  for (const auto& h : alpha.domain_family) images.push_back(image_of_set(m, h));
  for (std::size_t v = 0; v < ny; ++v)
    for (std::size_t h = 0; h < nd; ++h)
      if (images[h].subset_of(alpha.codomain_family[v])) candidates[v].push_back(h);

  // Injective choice of a representative per V, greedy in canonical order
  // with augmenting-path repair so the assignment is onto whenever possible.
  std::vector<std::size_t> rep(ny, SIZE_MAX);
  std::vector<std::size_t> taken_by(nd, SIZE_MAX);
  std::vector<char> visited;
  auto augment = [&](auto&& self, std::size_t v) -> bool {
    for (std::size_t h : candidates[v]) {
      if (visited[h]) continue;
      visited[h] = 1;
      if (taken_by[h] == SIZE_MAX || self(self, taken_by[h])) {
        taken_by[h] = v;
        rep[v] = h;
        return true;
      }
    }
    return false;
  };
  for (std::size_t v = 0; v < ny; ++v) {
    visited.assign(nd, 0);
    if (!augment(augment, v)) {
      Verdict fail = Verdict::fail()
                         .with("uncovered codomain member", alpha.codomain_family[v])
                         .note("no distinct domain member maps inside every codomain member")
                         .note("degenerate instance: an onto gain assignment does not exist");
      return AlphaResult{std::nullopt, std::move(fail)};
    }
  }

  alpha.assignment.assign(nd, SIZE_MAX);
  alpha.onto_witness.assign(ny, SIZE_MAX);
  for (std::size_t v = 0; v < ny; ++v) {
    alpha.assignment[rep[v]] = v;
    alpha.onto_witness[v] = rep[v];
  }
  // Remaining members take the smallest codomain member containing the image;
  // forward stability plus compatibility guarantees one exists.
  for (std::size_t h = 0; h < nd; ++h) {
    if (alpha.assignment[h] != SIZE_MAX) continue;
    bool assigned = false;
    for (std::size_t v = 0; v < ny; ++v)
      if (images[h].subset_of(alpha.codomain_family[v])) {
        alpha.assignment[h] = v;
        assigned = true;
        break;
      }
    if (!assigned) throw std::logic_error("image of an H member escaped every codomain H member");
  }

  Verdict ok = Verdict::pass();
  ok.note("gain assignment over " + std::to_string(nd) + " domain and " + std::to_string(ny) +
          " codomain members");
  return AlphaResult{std::move(alpha), std::move(ok)};
}

Verdict verify_k_infinity(const AlphaMap& alpha) {
  const std::size_t nd = alpha.domain_family.size();
  const std::size_t ny = alpha.codomain_family.size();
  if (alpha.assignment.size() != nd) return Verdict::fail().note("assignment is not total");
  for (std::size_t h = 0; h < nd; ++h)
    if (alpha.assignment[h] >= ny)
      return Verdict::fail().with("H", alpha.domain_family[h]).note("value outside the codomain family");
  if (alpha.onto_witness.size() != ny) return Verdict::fail().note("onto witness is not total");
  for (std::size_t v = 0; v < ny; ++v) {
    std::size_t h = alpha.onto_witness[v];
    if (h >= nd || alpha.assignment[h] != v)
      return Verdict::fail().with("B", alpha.codomain_family[v]).note("onto witness broken");
  }
  // Arbitrarily small values: some member maps inside every codomain member.
  for (std::size_t v = 0; v < ny; ++v) {
    bool found = false;
    for (std::size_t h = 0; h < nd; ++h)
      if (alpha.value_of(h).subset_of(alpha.codomain_family[v])) {
        found = true;
        break;
      }
    if (!found)
      return Verdict::fail().with("B", alpha.codomain_family[v]).note(
          "no value lies inside this member");
  }
  return Verdict::pass();
}

KappaMap construct_kappa(const AlphaMap& alpha) {
  if (alpha.domain_family.empty()) throw std::invalid_argument("alpha has an empty domain family");
  UniversePtr u = alpha.domain_family.front().universe();
  KappaMap k{u, Subset::empty(u), {}, {}};
  for (const auto& h : alpha.domain_family) k.covered = k.covered | h;
  k.selector.assign(k.domain_universe->size, std::nullopt);
  k.value.assign(k.domain_universe->size, std::nullopt);
  for (std::size_t d = 0; d < k.domain_universe->size; ++d) {
    if (!k.covered.test(d)) continue;
    // domain_family is in canonical order, so the first hit is the smallest.
    for (std::size_t h = 0; h < alpha.domain_family.size(); ++h)
      if (alpha.domain_family[h].test(d)) {
        k.selector[d] = alpha.domain_family[h];
        k.value[d] = alpha.value_of(h);
        break;
      }
  }
  return k;
}

const Subset& kappa_at(const KappaMap& kappa, std::size_t element) {
  if (element >= kappa.domain_universe->size) throw std::out_of_range("element out of range");
  if (!kappa.value[element].has_value())
    throw std::domain_error("point not covered by the domain family");
  return *kappa.value[element];
}

Verdict is_uniform_property(const SetFamily& p, const Limits& limits) {
  std::vector<Subset> members = enumerate_family(p, limits);
  for (const auto& a : members)
    for (const auto& b : members) {
      Subset join = a | b;
      bool dominated = false;
      for (const auto& c : members)
        if (join.subset_of(c)) {
          dominated = true;
          break;
        }
      if (!dominated)
        return Verdict::fail().with("first", a).with("second", b).note(
            "no member contains their union");
    }
  return Verdict::pass();
}

SetFamily ideal_from_uniform_property(const SetFamily& p, const Limits& limits) {
  Verdict v = is_uniform_property(p, limits);
  if (!v.holds) throw std::invalid_argument("family is not upward directed");
  return down_closure(p);
}

Verdict check_semilattice_hom(const SetValuedMap& m, const SetFamily& a, const SetFamily& b,
                              Direction direction, const Limits& limits) {
  check_map_families(m, a, b);
  if (direction == Direction::Backward) {
    if (!is_filter(a, limits).holds || !is_filter(b, limits).holds)
      throw std::invalid_argument("backward homomorphism check needs filters");
    std::vector<Subset> bs = enumerate_family(b, limits);
    for (const auto& b1 : bs)
      for (const auto& b2 : bs) {
        Subset lhs = upper_inverse(m, b1 & b2);
        Subset rhs = upper_inverse(m, b1) & upper_inverse(m, b2);
        if (lhs != rhs)
          return Verdict::fail().with("B1", b1).with("B2", b2).note("meet not preserved");
      }
    for (const auto& bm : bs) {
      Subset pre = upper_inverse(m, bm);
      if (!member_of(a, pre))
        return Verdict::fail().with("B", bm).with("upper inverse", pre).note(
            "value escapes a; the map is not into the filter");
    }
    return Verdict::pass();
  }
  if (!is_ideal(a, limits).holds || !is_ideal(b, limits).holds)
    throw std::invalid_argument("forward homomorphism check needs ideals");
  std::vector<Subset> as = enumerate_family(a, limits);
  for (const auto& a1 : as)
    for (const auto& a2 : as) {
      Subset lhs = image_of_set(m, a1 | a2);
      Subset rhs = image_of_set(m, a1) | image_of_set(m, a2);
      if (lhs != rhs)
        return Verdict::fail().with("A1", a1).with("A2", a2).note("join not preserved");
    }
  for (const auto& am : as) {
    Subset img = image_of_set(m, am);
    if (!member_of(b, img))
      return Verdict::fail().with("A", am).with("image", img).note(
          "value escapes b; the map is not into the ideal");
  }
  return Verdict::pass();
}

}  // namespace setstab
