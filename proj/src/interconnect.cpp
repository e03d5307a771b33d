#include "setstab/interconnect.hpp"

#include <algorithm>
#include <stdexcept>

namespace setstab {

SetValuedMap series_map(const SetValuedMap& m1, const SetValuedMap& m2) {
  if (!same_universe(m1.codomain(), m2.domain()))
    throw std::invalid_argument("series stages do not line up; supply an embedding");
  return compose_maps(m1, m2);
}

SetValuedMap series_map(const SetValuedMap& m1, const SetValuedMap& embedding,
                        const SetValuedMap& m2) {
  for (const auto& r : embedding.rows())
    if (r.count() != 1) throw std::invalid_argument("embedding rows must be singletons");
  return compose_maps(compose_maps(m1, embedding), m2);
}

bool family_subset_of(const SetFamily& a, const SetFamily& b, const Limits& limits) {
  if (!same_universe(a.universe(), b.universe()))
    throw std::invalid_argument("family inclusion over different universes");
  // Explicit members, or matching closure kinds, decide inclusion at the
  // generator level; anything else enumerates a.
  if (a.kind() == FamilyKind::Explicit || a.kind() == b.kind()) {
    for (const auto& s : a.sets())
      if (!member_of(b, s)) return false;
    return true;
  }
  for (const auto& s : enumerate_family(a, limits))
    if (!member_of(b, s)) return false;
  return true;
}

namespace {

Verdict hypothesis_failure(const std::string& which, const Verdict& inner) {
  Verdict v = inner;
  v.holds = false;
  v.notes.insert(v.notes.begin(), "hypothesis violation: " + which);
  return v;
}

}  // namespace

Verdict series_check(const SetValuedMap& m1, const SetValuedMap& m2, const SetFamily& a1,
                     const SetFamily& b1, const SetFamily& a2, const SetFamily& b2,
                     Direction direction, const Limits& limits) {
  if (!same_universe(a2.universe(), m2.domain()) || !same_universe(b1.universe(), m1.codomain()))
    throw std::invalid_argument("stage families over the wrong universes");
  SetValuedMap composed = series_map(m1, m2);
  if (direction == Direction::Backward) {
    Verdict s1 = is_backward_stable(m1, a1, b1, limits);
    if (!s1.holds) return hypothesis_failure("first stage not backward stable", s1);
    Verdict s2 = is_backward_stable(m2, a2, b2, limits);
    if (!s2.holds) return hypothesis_failure("second stage not backward stable", s2);
    if (!family_subset_of(a2, b1, limits))
      return Verdict::fail().note("hypothesis violation: a2 is not included in b1");
    Verdict conclusion = is_backward_stable(composed, a1, b2, limits);
    if (!conclusion.holds) conclusion.note("series conclusion failed despite valid hypotheses");
    return conclusion;
  }
  Verdict s1 = is_forward_stable(m1, a1, b1, limits);
  if (!s1.holds) return hypothesis_failure("first stage not forward stable", s1);
  Verdict s2 = is_forward_stable(m2, a2, b2, limits);
  if (!s2.holds) return hypothesis_failure("second stage not forward stable", s2);
  if (!family_subset_of(b1, a2, limits))
    return Verdict::fail().note("hypothesis violation: b1 is not included in a2");
  Verdict conclusion = is_forward_stable(composed, a1, b2, limits);
  if (!conclusion.holds) conclusion.note("series conclusion failed despite valid hypotheses");
  return conclusion;
}

Verdict parallel_check(const SetValuedMap& m1, const SetValuedMap& m2, const SetFamily& a1,
                       const SetFamily& a2, const SetFamily& b1, const SetFamily& b2,
                       Direction direction, const Limits& limits) {
  if (!same_universe(m1.domain(), m2.domain()))
    throw std::invalid_argument("parallel components need a shared domain");
  if (!family_subset_of(a1, a2, limits))
    return Verdict::fail().note("hypothesis violation: a1 is not included in a2");
  SetValuedMap prod = product_map(m1, m2);
  SetFamily rectangles = product_base(b1, b2);
  if (direction == Direction::Forward) {
    for (const SetFamily* a : {&a1, &a2})
      if (!is_ideal_base(*a, limits))
        return Verdict::fail().note("hypothesis violation: input family is not an ideal base");
    Verdict s1 = is_forward_stable(m1, a1, b1, limits);
    if (!s1.holds) return hypothesis_failure("first component not forward stable", s1);
    Verdict s2 = is_forward_stable(m2, a2, b2, limits);
    if (!s2.holds) return hypothesis_failure("second component not forward stable", s2);
    Verdict conclusion = is_forward_stable(prod, a1, down_closure(rectangles), limits);
    if (!conclusion.holds) conclusion.note("parallel conclusion failed despite valid hypotheses");
    return conclusion;
  }
  for (const SetFamily* a : {&a1, &a2})
    if (!is_filter_base(*a, limits))
      return Verdict::fail().note("hypothesis violation: input family is not a filter base");
  Verdict s1 = is_backward_stable(m1, a1, b1, limits);
  if (!s1.holds) return hypothesis_failure("first component not backward stable", s1);
  Verdict s2 = is_backward_stable(m2, a2, b2, limits);
  if (!s2.holds) return hypothesis_failure("second component not backward stable", s2);
  Verdict conclusion = is_backward_stable(prod, up_closure(a2), rectangles, limits);
  if (!conclusion.holds) conclusion.note("parallel conclusion failed despite valid hypotheses");
  return conclusion;
}

FeedbackSystem::FeedbackSystem(UniversePtr y1_, UniversePtr y2_, UniversePtr u1_, UniversePtr u2_,
                               SetValuedMap psi1_, SetValuedMap psi2_)
    : y1(std::move(y1_)),
      y2(std::move(y2_)),
      u1(std::move(u1_)),
      u2(std::move(u2_)),
      psi1(std::move(psi1_)),
      psi2(std::move(psi2_)) {
  if (!same_universe(psi1.domain(), pair_encode(y2, u1)) || !same_universe(psi1.codomain(), y1))
    throw std::invalid_argument("psi1 must map (y2,u1) pairs into y1");
  if (!same_universe(psi2.domain(), pair_encode(y1, u2)) || !same_universe(psi2.codomain(), y2))
    throw std::invalid_argument("psi2 must map (y1,u2) pairs into y2");
  input_universe = pair_encode(u1, u2);
  output_universe = pair_encode(y1, y2);
}

SetValuedMap feedback_solution_map(const FeedbackSystem& fb) {
  const std::size_t ny1 = fb.y1->size, ny2 = fb.y2->size;
  const std::size_t nu1 = fb.u1->size, nu2 = fb.u2->size;
  std::vector<Subset> rows;
  rows.reserve(nu1 * nu2);
  for (std::size_t d1 = 0; d1 < nu1; ++d1)
    for (std::size_t d2 = 0; d2 < nu2; ++d2) {
      Subset row(fb.output_universe);
      for (std::size_t ya = 0; ya < ny1; ++ya)
        for (std::size_t yb = 0; yb < ny2; ++yb) {
          if (fb.psi1.row(pair_index(yb, d1, nu1)).test(ya) &&
              fb.psi2.row(pair_index(ya, d2, nu2)).test(yb))
            row.set(pair_index(ya, yb, ny2));
        }
      rows.push_back(std::move(row));
    }
  return SetValuedMap(fb.input_universe, fb.output_universe, std::move(rows));
}

SetValuedMap upsilon_projection(const FeedbackSystem& fb, int side) {
  if (side != 1 && side != 2) throw std::invalid_argument("side must be 1 or 2");
  SetValuedMap solution = feedback_solution_map(fb);
  const UniversePtr& target = side == 1 ? fb.y1 : fb.y2;
  const std::size_t ny2 = fb.y2->size;
  std::vector<Subset> rows;
  rows.reserve(solution.rows().size());
  for (const auto& sol : solution.rows()) {
    Subset row(target);
    for (std::size_t e : sol.members()) {
      auto [ya, yb] = pair_split(e, ny2);
      row.set(side == 1 ? ya : yb);
    }
    rows.push_back(std::move(row));
  }
  return SetValuedMap(fb.input_universe, target, std::move(rows));
}

Subset gamma_step(const FeedbackSystem& fb, int side, const Subset& y_set, const Subset& d_set) {
  if (side != 1 && side != 2) throw std::invalid_argument("side must be 1 or 2");
  const UniversePtr& own = side == 1 ? fb.y1 : fb.y2;
  if (!same_universe(y_set.universe(), own))
    throw std::invalid_argument("gamma argument over the wrong output universe");
  if (!same_universe(d_set.universe(), fb.input_universe))
    throw std::invalid_argument("gamma inputs over the wrong input universe");
  const SetValuedMap& own_map = side == 1 ? fb.psi1 : fb.psi2;
  const SetValuedMap& other_map = side == 1 ? fb.psi2 : fb.psi1;
  const std::size_t nu1 = fb.u1->size, nu2 = fb.u2->size;
  Subset out(own);
  for (std::size_t y : y_set.members())
    for (std::size_t d : d_set.members()) {
      auto [d1, d2] = pair_split(d, nu2);
      const std::size_t own_input = side == 1 ? d1 : d2;
      const std::size_t other_input = side == 1 ? d2 : d1;
      const std::size_t other_in_size = side == 1 ? nu2 : nu1;
      const std::size_t own_in_size = side == 1 ? nu1 : nu2;
      const Subset& inner = other_map.row(pair_index(y, other_input, other_in_size));
      for (std::size_t z : inner.members())
        out = out | own_map.row(pair_index(z, own_input, own_in_size));
    }
  return out;
}

Subset gamma_iterate(const FeedbackSystem& fb, int side, const Subset& y_set, const Subset& d_set,
                     std::size_t n) {
  if (n < 1) throw std::invalid_argument("iteration count must be at least 1");
  std::vector<Subset> seen;
  Subset current = gamma_step(fb, side, y_set, d_set);
  seen.push_back(current);
  for (std::size_t k = 2; k <= n; ++k) {
    current = gamma_step(fb, side, current, d_set);
    for (std::size_t m = 0; m < seen.size(); ++m) {
      if (seen[m] == current) {
        // seen[m] is iterate m+1; cycle length k-(m+1) resolves any n.
        const std::size_t cycle = k - (m + 1);
        return seen[m + ((n - (m + 1)) % cycle)];
      }
    }
    seen.push_back(current);
  }
  return current;
}

namespace {

// Distinct loop iterates from a point, in order of first appearance, cut off
// at the bound or at the first cycle.
struct IterateTrack {
  std::vector<Subset> sets;
  bool cycled = false;
};

IterateTrack track_iterates(const FeedbackSystem& fb, int side, std::size_t point,
                            const Subset& d_set, std::size_t n_max) {
  const UniversePtr& own = side == 1 ? fb.y1 : fb.y2;
  IterateTrack t;
  Subset current = gamma_step(fb, side, Subset::singleton(own, point), d_set);
  t.sets.push_back(current);
  for (std::size_t n = 2; n <= n_max; ++n) {
    current = gamma_step(fb, side, current, d_set);
    if (std::find(t.sets.begin(), t.sets.end(), current) != t.sets.end()) {
      t.cycled = true;
      return t;
    }
    t.sets.push_back(current);
  }
  return t;
}

// Targets are the listed sets; candidate pools list generators first and then
// the remaining enumerated members in canonical order.
std::vector<Subset> candidate_pool(const SetFamily& f, const Limits& limits) {
  std::vector<Subset> pool = f.sets();
  if (f.kind() != FamilyKind::Explicit) {
    for (const auto& s : enumerate_family(f, limits))
      if (std::find(pool.begin(), pool.end(), s) == pool.end()) pool.push_back(s);
  }
  return pool;
}

bool rectangle_inside(const Subset& s1, const Subset& s2, const Subset& target,
                      std::size_t ny2) {
  for (std::size_t p : s1.members())
    for (std::size_t q : s2.members())
      if (!target.test(pair_index(p, q, ny2))) return false;
  return true;
}

struct SqueezeOutcome {
  bool ok = false;
  std::optional<std::size_t> bad_point;
  std::vector<std::string> table;
  bool bound_hit = false;
};

// Checks the contraction inclusion for one (A, B) pair at every point outside B.
SqueezeOutcome squeeze(const FeedbackSystem& fb, const Subset& candidate_a, const Subset& target_b,
                       std::size_t n1_max, std::size_t n2_max) {
  const std::size_t ny1 = fb.y1->size, ny2 = fb.y2->size;
  SqueezeOutcome out;
  std::vector<std::optional<IterateTrack>> track1(ny1), track2(ny2);
  for (std::size_t p = 0; p < ny1; ++p)
    for (std::size_t q = 0; q < ny2; ++q) {
      if (target_b.test(pair_index(p, q, ny2))) continue;
      if (!track1[p]) track1[p] = track_iterates(fb, 1, p, candidate_a, n1_max);
      if (!track2[q]) track2[q] = track_iterates(fb, 2, q, candidate_a, n2_max);
      if (!track1[p]->cycled || !track2[q]->cycled) out.bound_hit = true;
      bool found = false;
      for (std::size_t n1 = 0; n1 < track1[p]->sets.size() && !found; ++n1)
        for (std::size_t n2 = 0; n2 < track2[q]->sets.size() && !found; ++n2) {
          if (rectangle_inside(track1[p]->sets[n1], track2[q]->sets[n2], target_b, ny2)) {
            found = true;
            out.table.push_back("(" + fb.y1->label_of(p) + "," + fb.y2->label_of(q) + ")->(n1=" +
                                std::to_string(n1 + 1) + ",n2=" + std::to_string(n2 + 1) + ")");
          }
        }
      if (!found) {
        out.bad_point = pair_index(p, q, ny2);
        return out;
      }
    }
  out.ok = true;
  return out;
}

}  // namespace

Verdict small_gain_check(const FeedbackSystem& fb, const SetFamily& a, const SetFamily& b,
                         std::size_t n_max, Direction direction, const Limits& limits) {
  if (!same_universe(a.universe(), fb.input_universe))
    throw std::invalid_argument("family a must live over the input universe");
  if (!same_universe(b.universe(), fb.output_universe))
    throw std::invalid_argument("family b must live over the output universe");

  const std::size_t n1_max = n_max ? n_max : fb.y1->size;
  const std::size_t n2_max = n_max ? n_max : fb.y2->size;

  const std::vector<Subset>& targets = direction == Direction::Backward ? b.sets() : a.sets();
  std::vector<Subset> pool =
      candidate_pool(direction == Direction::Backward ? a : b, limits);

  Verdict result = Verdict::pass();
  bool any_bound_hit = false;
  for (const auto& t : targets) {
    bool satisfied = false;
    SqueezeOutcome last;
    for (const auto& c : pool) {
      const Subset& candidate_a = direction == Direction::Backward ? c : t;
      const Subset& target_b = direction == Direction::Backward ? t : c;
      last = squeeze(fb, candidate_a, target_b, n1_max, n2_max);
      any_bound_hit = any_bound_hit || last.bound_hit;
      if (last.ok) {
        result.with(direction == Direction::Backward ? "B" : "A", t)
            .with(direction == Direction::Backward ? "A" : "B", c);
        for (const auto& line : last.table) result.note(line);
        satisfied = true;
        break;
      }
    }
    if (!satisfied) {
      Verdict fail = Verdict::fail().with(direction == Direction::Backward ? "B" : "A", t);
      if (last.bad_point)
        fail.with("uncovered point", Subset::singleton(fb.output_universe, *last.bad_point));
      fail.note("no member squeezes every outside point within the bound");
      fail.note(last.bound_hit ? "search stopped at the iteration bound"
                               : "search exhausted the iterate cycles");
      return fail;
    }
  }
  result.note(any_bound_hit ? "some iterate searches stopped at the bound"
                            : "every iterate search ended on a cycle");
  return result;
}

Verdict small_gain_theorem(const FeedbackSystem& fb, const SetFamily& a, const SetFamily& b,
                           std::size_t n_max, Direction direction, const Limits& limits) {
  Verdict gain = small_gain_check(fb, a, b, n_max, direction, limits);
  if (!gain.holds) {
    gain.notes.insert(gain.notes.begin(), "small-gain property does not hold; nothing to conclude");
    return gain;
  }
  SetValuedMap solution = feedback_solution_map(fb);
  Verdict conclusion =
      direction == Direction::Backward
          ? is_backward_stable(solution, up_closure(a), b, limits)
          : is_forward_stable(solution, a, down_closure(b), limits);
  if (!conclusion.holds) {
    conclusion.note("small gain held but the implied stability failed; this should be impossible");
    return conclusion;
  }
  Verdict combined = Verdict::both("small-gain", gain, "stability", conclusion);
  combined.holds = true;
  return combined;
}

}  // namespace setstab
