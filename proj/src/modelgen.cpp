#include "setstab/modelgen.hpp"

#include <algorithm>
#include <stdexcept>

namespace setstab {

TrajectoryUniverse build_trajectory_universe(const TransitionRelation& tr, std::size_t horizon,
                                             const Limits& limits) {
  TrajectoryUniverse out;
  out.base = tr.states;
  out.horizon = horizon;

  std::vector<std::size_t> path;
  auto extend = [&](auto&& self, std::size_t state) -> void {
    path.push_back(state);
    if (path.size() == horizon + 1) {
      if (out.sequences.size() >= limits.trajectory_ceiling)
        throw EnumerationRefused("trajectory ceiling exceeded at horizon " +
                                 std::to_string(horizon));
      out.sequences.push_back(path);
    } else {
      for (std::size_t next : tr.step.row(state).members()) self(self, next);
    }
    path.pop_back();
  };
  for (std::size_t s = 0; s < tr.states->size; ++s) extend(extend, s);

  Universe u;
  u.size = out.sequences.size();
  if (u.size == 0) throw std::invalid_argument("no trajectories at this horizon");
  std::vector<std::string> labels;
  labels.reserve(u.size);
  for (const auto& seq : out.sequences) {
    std::string l = "(";
    for (std::size_t t = 0; t < seq.size(); ++t) {
      if (t) l += ",";
      l += tr.states->label_of(seq[t]);
    }
    l += ")";
    labels.push_back(std::move(l));
  }
  u.labels = std::move(labels);
  if (tr.states->coordinates) {
    std::vector<std::vector<Rational>> coords;
    coords.reserve(u.size);
    for (const auto& seq : out.sequences) {
      std::vector<Rational> c;
      for (std::size_t s : seq) {
        const auto& base = (*tr.states->coordinates)[s];
        c.insert(c.end(), base.begin(), base.end());
      }
      coords.push_back(std::move(c));
    }
    u.coordinates = std::move(coords);
  }
  if (tr.states->magnitude) {
    std::vector<Rational> mags;
    mags.reserve(u.size);
    for (const auto& seq : out.sequences) {
      Rational m = (*tr.states->magnitude)[seq[0]];
      for (std::size_t s : seq) {
        const Rational& v = (*tr.states->magnitude)[s];
        if (m < v) m = v;
      }
      mags.push_back(m);
    }
    u.magnitude = std::move(mags);
  }
  out.universe = make_universe(std::move(u));
  return out;
}

SolutionSystem solution_map(const TransitionRelation& tr, std::size_t horizon,
                            const Limits& limits) {
  TrajectoryUniverse traj = build_trajectory_universe(tr, horizon, limits);
  std::vector<Subset> rows(tr.states->size, Subset::empty(traj.universe));
  for (std::size_t i = 0; i < traj.sequences.size(); ++i)
    rows[traj.sequences[i][0]].set(i);
  SetValuedMap map(tr.states, traj.universe, std::move(rows));
  return SolutionSystem{std::move(traj), std::move(map)};
}

namespace {

bool within_distance(const Universe& u, std::size_t x, std::size_t c, const Rational& r,
                     Metric metric) {
  const auto& px = (*u.coordinates)[x];
  const auto& pc = (*u.coordinates)[c];
  if (metric == Metric::Chebyshev) {
    for (std::size_t k = 0; k < px.size(); ++k)
      if (r < abs(px[k] - pc[k])) return false;
    return true;
  }
  Rational sum(0);
  for (std::size_t k = 0; k < px.size(); ++k) {
    Rational d = px[k] - pc[k];
    sum = sum + d * d;
  }
  return sum <= r * r;
}

}  // namespace

SetFamily ball_filter(const UniversePtr& u, const Subset& center,
                      const std::vector<Rational>& radii, Metric metric) {
  if (!u->coordinates) throw std::invalid_argument("ball filter needs coordinates");
  if (!same_universe(center.universe(), u))
    throw std::invalid_argument("center over a different universe");
  if (center.none()) throw std::invalid_argument("ball filter needs a nonempty center");
  if (radii.empty()) throw std::invalid_argument("ball filter needs at least one radius");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i - 1] < radii[i])) throw std::invalid_argument("radii must be ascending");
  std::vector<Subset> generators;
  for (const auto& r : radii) {
    Subset ball(u);
    for (std::size_t x = 0; x < u->size; ++x) {
      bool close = false;
      for (std::size_t c : center.members())
        if (within_distance(*u, x, c, r, metric)) {
          close = true;
          break;
        }
      if (close) ball.set(x);
    }
    generators.push_back(std::move(ball));
  }
  return SetFamily::up_generated(std::move(generators));
}

SetFamily sublevel_ideal(const UniversePtr& u, const std::vector<Rational>& levels) {
  if (!u->magnitude) throw std::invalid_argument("sublevel ideal needs magnitudes");
  if (levels.empty()) throw std::invalid_argument("sublevel ideal needs at least one level");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (!(levels[i - 1] < levels[i])) throw std::invalid_argument("levels must be ascending");
  std::vector<Subset> generators;
  for (const auto& level : levels) {
    Subset g(u);
    for (std::size_t x = 0; x < u->size; ++x)
      if ((*u->magnitude)[x] <= level) g.set(x);
    generators.push_back(std::move(g));
  }
  return SetFamily::down_generated(std::move(generators));
}

bool sublevel_covers(const UniversePtr& u, const std::vector<Rational>& levels) {
  SetFamily f = sublevel_ideal(u, levels);
  return family_union(f) == Subset::full(u);
}

SetFamily bounded_subsets_ideal(const SetFamily& sublevel, const Subset& d) {
  std::vector<Subset> generators;
  for (const auto& g : sublevel.sets()) generators.push_back(g & d);
  return SetFamily::down_generated(std::move(generators));
}

SetFamily safety_ideal(const SetFamily& safe_regions, const Limits& limits) {
  for (const auto& a : safe_regions.sets())
    for (const auto& b : safe_regions.sets())
      if (!member_of(safe_regions, a | b))
        throw std::invalid_argument("safe regions must be closed under pairwise union");
  return ideal_from_uniform_property(safe_regions, limits);
}

SetFamily positivity_ideal(const UniversePtr& u, std::size_t zero_element) {
  if (!u->order) throw std::invalid_argument("positivity ideal needs an element order");
  if (zero_element >= u->size) throw std::out_of_range("zero element out of range");
  Subset cone(u);
  for (std::size_t x = 0; x < u->size; ++x)
    if (u->order_leq(zero_element, x)) cone.set(x);
  return SetFamily::down_generated({cone});
}

namespace {

std::size_t index_of_value(const UniversePtr& u, const Rational& v) {
  for (std::size_t i = 0; i < u->size; ++i)
    if ((*u->coordinates)[i][0] == v) return i;
  throw std::logic_error("value not on the grid");
}

FixtureCheck check(std::string id, std::string description, bool expected, Verdict verdict) {
  return FixtureCheck{std::move(id), std::move(description), expected, std::move(verdict)};
}

}  // namespace

TransitionRelation example_weak_stability_relation(const Rational& p) {
  if (p == Rational(0)) {
    UniversePtr states = grid_universe(Rational(0), Rational(1), 1);
    SetValuedMap step(states, states, {Subset::singleton(states, 0)});
    return TransitionRelation{states, std::move(step)};
  }
  // States 0, p/2, p. Below the half-threshold the next value branches to
  // {0, p}; above it the value halves.
  Rational half = p * Rational(1, 2);
  UniversePtr states = grid_universe(Rational(0), half, 3);
  const std::size_t i0 = 0, ihalf = 1, ip = 2;
  std::vector<Subset> rows(3, Subset::empty(states));
  rows[i0] = Subset::of(states, {i0, ip});
  rows[ihalf] = Subset::of(states, {i0, ip});
  rows[ip] = Subset::singleton(states, ihalf);
  SetValuedMap step(states, states, std::move(rows));
  return TransitionRelation{states, std::move(step)};
}

FixtureSuite example_weak_stability_fixture(const Rational& p, const Limits& limits) {
  FixtureSuite suite;
  suite.name = p == Rational(0) ? "example:sexy(p=0)" : "example:sexy(p=1)";
  TransitionRelation tr = example_weak_stability_relation(p);
  SolutionSystem sys = solution_map(tr, 4, limits);
  Subset d = Subset::singleton(tr.states, 0);
  std::vector<Rational> dom_radii =
      p == Rational(0) ? std::vector<Rational>{Rational(1)}
                       : std::vector<Rational>{Rational(1, 2), Rational(1)};
  SetFamily dom_filter = ball_filter(tr.states, d, dom_radii, Metric::Euclidean);
  Subset image = image_of_set(sys.map, d);
  SetFamily img_filter = ball_filter(sys.trajectories.universe, image,
                                     {Rational(1, 4), Rational(1, 2), Rational(1)},
                                     Metric::Chebyshev);
  if (p == Rational(0)) {
    suite.checks.push_back(check(
        "sexy-p0-backward", "origin backward stable over the trajectory ball filters", true,
        is_backward_stable(sys.map, dom_filter, img_filter, limits)));
    return suite;
  }
  suite.checks.push_back(check(
      "sexy-p1-backward", "origin not backward stable over the trajectory ball filters", false,
      is_backward_stable(sys.map, dom_filter, img_filter, limits)));
  suite.checks.push_back(check(
      "sexy-p1-weak-forward", "weak forward stability still holds at the origin", true,
      is_weak_forward_stable(sys.map, dom_filter, img_filter, limits)));
  suite.checks.push_back(check(
      "sexy-p1-trajectories", "horizon-4 trajectory space stays enumerable", true,
      sys.trajectories.sequences.size() == 21
          ? Verdict::pass().note("21 trajectories at horizon 4")
          : Verdict::fail().note("unexpected trajectory count " +
                                 std::to_string(sys.trajectories.sequences.size()))));
  return suite;
}

TransitionRelation example_weak_lagrange_relation() {
  UniversePtr states = grid_universe(Rational(0), Rational(1), 3);
  std::vector<Subset> rows(3, Subset::empty(states));
  rows[0] = Subset::singleton(states, 0);
  rows[1] = Subset::of(states, {0, 1, 2});  // contract, hold, grow to the cap
  rows[2] = Subset::of(states, {1, 2});
  SetValuedMap step(states, states, std::move(rows));
  return TransitionRelation{states, std::move(step)};
}

TransitionRelation example_weak_lagrange_contraction() {
  UniversePtr states = grid_universe(Rational(0), Rational(1), 3);
  std::vector<Subset> rows(3, Subset::empty(states));
  rows[0] = Subset::singleton(states, 0);
  rows[1] = Subset::singleton(states, 0);
  rows[2] = Subset::singleton(states, 1);
  SetValuedMap step(states, states, std::move(rows));
  return TransitionRelation{states, std::move(step)};
}

FixtureSuite example_weak_lagrange_fixture(const Limits& limits) {
  FixtureSuite suite;
  suite.name = "example:sexy2";
  TransitionRelation tr = example_weak_lagrange_relation();
  SolutionSystem sys = solution_map(tr, 4, limits);
  SetFamily dom_ideal = sublevel_ideal(tr.states, {Rational(1)});
  SetFamily cod_ideal = sublevel_ideal(sys.trajectories.universe, {Rational(1)});
  suite.checks.push_back(check(
      "sexy2-strong-forward", "strong forward stability fails on the growth branch", false,
      is_forward_stable(sys.map, dom_ideal, cod_ideal, limits)));
  SetFamily dom_base = SetFamily::explicit_family(dom_ideal.sets());
  SetFamily cod_base = SetFamily::explicit_family(cod_ideal.sets());
  suite.checks.push_back(check(
      "sexy2-weak-forward", "weak forward stability over the sublevel bases holds", true,
      is_weak_forward_stable(sys.map, dom_base, cod_base, limits)));
  TransitionRelation contraction = example_weak_lagrange_contraction();
  SolutionSystem csys = solution_map(contraction, 4, limits);
  SetFamily ccod = sublevel_ideal(csys.trajectories.universe, {Rational(1)});
  suite.checks.push_back(check(
      "sexy2-contraction-forward", "the contraction-only variant is strongly forward stable",
      true, is_forward_stable(csys.map, dom_ideal, ccod, limits)));
  return suite;
}

ParallelCounterexample example_parallel_counterexample() {
  UniversePtr grid = grid_universe(Rational(0), Rational(1, 4), 9);  // 0..2
  SetValuedMap m1 = SetValuedMap::identity(grid);
  std::vector<Subset> rows2;
  rows2.reserve(grid->size);
  for (std::size_t i = 0; i < grid->size; ++i) {
    const Rational& v = (*grid->coordinates)[i][0];
    rows2.push_back(v <= Rational(1) ? Subset::singleton(grid, i)
                                     : Subset::singleton(grid, index_of_value(grid, Rational(0))));
  }
  SetValuedMap m2(grid, grid, std::move(rows2));
  Subset d(grid);
  for (std::size_t i = 0; i < grid->size; ++i)
    if ((*grid->coordinates)[i][0] <= Rational(1)) d.set(i);
  std::vector<Rational> radii = {Rational(1, 4), Rational(1, 2), Rational(1)};
  SetFamily dom_filter = ball_filter(grid, d, radii);
  SetFamily b1 = ball_filter(grid, image_of_set(m1, d), radii);
  SetFamily b2 = ball_filter(grid, image_of_set(m2, d), radii);
  return ParallelCounterexample{grid, std::move(m1), std::move(m2), std::move(d),
                                std::move(dom_filter), std::move(b1), std::move(b2)};
}

FixtureSuite example_parallel_fixture(const Limits& limits) {
  FixtureSuite suite;
  suite.name = "example:parallel-cex";
  ParallelCounterexample ex = example_parallel_counterexample();
  Verdict f1 = is_backward_stable(ex.m1, ex.domain_filter, ex.codomain_filter1, limits);
  Verdict f2 = is_backward_stable(ex.m2, ex.domain_filter, ex.codomain_filter2, limits);
  suite.checks.push_back(check("parallel-cex-factors",
                               "both factors backward stable at the unit interval", true,
                               Verdict::both("factor1", f1, "factor2", f2)));
  suite.checks.push_back(check(
      "parallel-cex-rectangles", "rectangle-base parallel conclusion holds", true,
      parallel_check(ex.m1, ex.m2, ex.domain_filter, ex.domain_filter, ex.codomain_filter1,
                     ex.codomain_filter2, Direction::Backward, limits)));
  SetValuedMap prod = product_map(ex.m1, ex.m2);
  Subset diag = image_of_set(prod, ex.d);
  SetFamily diag_filter =
      ball_filter(prod.codomain(), diag, {Rational(1, 2), Rational(1)}, Metric::Euclidean);
  suite.checks.push_back(check(
      "parallel-cex-diagonal",
      "backward stability against the diagonal-image ball filter fails", false,
      is_backward_stable(prod, ex.domain_filter, diag_filter, limits)));
  return suite;
}

FeedbackSystem example_halving_feedback() {
  UniversePtr q = grid_universe(Rational(0), Rational(1), 4);
  auto half_max_map = [&](const UniversePtr& in_other) {
    UniversePtr dom = pair_encode(in_other, q);
    std::vector<Subset> rows;
    rows.reserve(dom->size);
    for (std::size_t y = 0; y < q->size; ++y)
      for (std::size_t d = 0; d < q->size; ++d) {
        std::size_t v = std::max(y / 2, d);
        rows.push_back(Subset::singleton(q, v));
      }
    return SetValuedMap(dom, q, std::move(rows));
  };
  SetValuedMap psi1 = half_max_map(q);
  SetValuedMap psi2 = half_max_map(q);
  return FeedbackSystem(q, q, q, q, std::move(psi1), std::move(psi2));
}

FixtureSuite example_halving_fixture(const Limits& limits) {
  FixtureSuite suite;
  suite.name = "example:halving";
  FeedbackSystem fb = example_halving_feedback();
  SetValuedMap solution = feedback_solution_map(fb);
  Subset origin_row = solution.row(pair_index(0, 0, fb.u2->size));
  Subset expected = Subset::singleton(fb.output_universe, pair_index(0, 0, fb.y2->size));
  suite.checks.push_back(check("halving-origin", "zero inputs pin both outputs at zero", true,
                               origin_row == expected
                                   ? Verdict::pass().with("solution", origin_row)
                                   : Verdict::fail().with("solution", origin_row)));
  std::vector<Subset> sublevels;
  for (long long k = 1; k <= 3; ++k) {
    Subset s(fb.input_universe);
    for (std::size_t e = 0; e < fb.input_universe->size; ++e)
      if ((*fb.input_universe->magnitude)[e] <= Rational(k)) s.set(e);
    sublevels.push_back(std::move(s));
  }
  SetFamily a = SetFamily::explicit_family(std::move(sublevels));
  // One rectangle target per halved input level.
  std::vector<Subset> rectangles;
  for (long long k = 1; k <= 2; ++k) {
    Subset r(fb.output_universe);
    for (std::size_t e = 0; e < fb.output_universe->size; ++e)
      if ((*fb.output_universe->magnitude)[e] <= Rational(k)) r.set(e);
    rectangles.push_back(std::move(r));
  }
  SetFamily b = SetFamily::explicit_family(std::move(rectangles));
  suite.checks.push_back(check("halving-small-gain",
                               "small-gain property holds with three loop steps per side", true,
                               small_gain_check(fb, a, b, 3, Direction::Backward, limits)));
  suite.checks.push_back(check("halving-small-gain-theorem",
                               "small gain implies backward stability of the loop", true,
                               small_gain_theorem(fb, a, b, 3, Direction::Backward, limits)));
  return suite;
}

std::vector<FixtureSuite> run_all_fixtures(const Limits& limits) {
  std::vector<FixtureSuite> out;
  out.push_back(example_weak_stability_fixture(Rational(0), limits));
  out.push_back(example_weak_stability_fixture(Rational(1), limits));
  out.push_back(example_weak_lagrange_fixture(limits));
  out.push_back(example_parallel_fixture(limits));
  out.push_back(example_halving_fixture(limits));
  return out;
}

}  // namespace setstab
