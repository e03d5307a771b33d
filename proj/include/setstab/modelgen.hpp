#pragma once

#include <string>
#include <vector>

#include "setstab/interconnect.hpp"
#include "setstab/stability.hpp"

namespace setstab {

// One-step difference inclusion over a finite state universe. Rows may be
// empty, modeling blocked states.
struct TransitionRelation {
  UniversePtr states;
  SetValuedMap step;
};

// All step-consistent state sequences of length horizon+1, indexed in
// depth-first canonical state order. The universe inherits concatenated
// coordinates and running-maximum magnitudes from the base states, so ball
// filters (with the Chebyshev metric this is the uniform metric on
// trajectories) and sublevel ideals apply directly.
struct TrajectoryUniverse {
  UniversePtr base;
  std::size_t horizon = 0;
  UniversePtr universe;
  std::vector<std::vector<std::size_t>> sequences;
};

TrajectoryUniverse build_trajectory_universe(const TransitionRelation& tr, std::size_t horizon,
                                             const Limits& limits = {});

// Solution map from initial states to the trajectories they generate.
struct SolutionSystem {
  TrajectoryUniverse trajectories;
  SetValuedMap map;
};

SolutionSystem solution_map(const TransitionRelation& tr, std::size_t horizon,
                            const Limits& limits = {});

enum class Metric { Euclidean, Chebyshev };

// Up-generated family of closed balls around a set; nested generators make it
// a filter by construction.
SetFamily ball_filter(const UniversePtr& u, const Subset& center,
                      const std::vector<Rational>& radii, Metric metric = Metric::Euclidean);

// Down-generated family of magnitude sublevel sets; an ideal by construction.
// It covers the universe only when the top level reaches the top magnitude;
// uncovered elements model unbounded points.
SetFamily sublevel_ideal(const UniversePtr& u, const std::vector<Rational>& levels);
bool sublevel_covers(const UniversePtr& u, const std::vector<Rational>& levels);

// Bounded subsets of a fixed set: the sublevel generators cut down to d.
SetFamily bounded_subsets_ideal(const SetFamily& sublevel, const Subset& d);

// Down closure of a union-closed family of safe regions.
SetFamily safety_ideal(const SetFamily& safe_regions, const Limits& limits = {});

// Principal ideal generated by the nonnegative cone of the element order.
SetFamily positivity_ideal(const UniversePtr& u, std::size_t zero_element);

struct FixtureCheck {
  std::string id;
  std::string description;
  bool expected = false;
  Verdict verdict;
};

struct FixtureSuite {
  std::string name;
  std::vector<FixtureCheck> checks;
};

// Branching relation: states below the half-threshold jump to {0,p}, others
// halve. With p=0 the origin is backward stable; with p=1 it is not, yet the
// weak forward check still passes.
TransitionRelation example_weak_stability_relation(const Rational& p);
FixtureSuite example_weak_stability_fixture(const Rational& p, const Limits& limits = {});

// Contract-hold-grow relation on {0,1,2}: every positive state has a bounded
// branch and a branch that reaches the cap. Strong forward stability over
// sublevel ideals fails while the weak form over the sublevel bases holds.
TransitionRelation example_weak_lagrange_relation();
TransitionRelation example_weak_lagrange_contraction();
FixtureSuite example_weak_lagrange_fixture(const Limits& limits = {});

// Identity paired with a saturating copy on the quarter grid over [0,2]. Both
// factors are backward stable at [0,1], the rectangle-base parallel verdict
// holds, but backward stability against the ball filter of the diagonal image
// fails.
struct ParallelCounterexample {
  UniversePtr grid;
  SetValuedMap m1, m2;
  Subset d;
  SetFamily domain_filter;
  SetFamily codomain_filter1, codomain_filter2;
};
ParallelCounterexample example_parallel_counterexample();
FixtureSuite example_parallel_fixture(const Limits& limits = {});

// Feedback pair on {0,1,2,3} where each side outputs max(floor(other/2), own
// input); a desk-scale system with a genuine small-gain certificate.
FeedbackSystem example_halving_feedback();
FixtureSuite example_halving_fixture(const Limits& limits = {});

// Every built-in fixture, in report order.
std::vector<FixtureSuite> run_all_fixtures(const Limits& limits = {});

}  // namespace setstab
