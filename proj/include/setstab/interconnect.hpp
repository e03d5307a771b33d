#pragma once

#include <optional>

#include "setstab/stability.hpp"

namespace setstab {

// Series composition. The codomain of m1 must equal the domain of m2; when
// they differ an explicit embedding map can bridge them.
SetValuedMap series_map(const SetValuedMap& m1, const SetValuedMap& m2);
SetValuedMap series_map(const SetValuedMap& m1, const SetValuedMap& embedding,
                        const SetValuedMap& m2);

// Extension inclusion a within b. Generator-level when the kinds match,
// enumeration fallback otherwise.
bool family_subset_of(const SetFamily& a, const SetFamily& b, const Limits& limits = {});

// Series stability harness: checks the component stabilities and the family
// inclusion between the stages, then the conclusion on the composed map.
// Hypothesis violations are reported, not silently ignored.
Verdict series_check(const SetValuedMap& m1, const SetValuedMap& m2, const SetFamily& a1,
                     const SetFamily& b1, const SetFamily& a2, const SetFamily& b2,
                     Direction direction, const Limits& limits = {});

// Parallel stability harness. Forward: the product map against the down
// closure of the rectangle base. Backward: against the rectangle base itself,
// from the up closure of a2.
Verdict parallel_check(const SetValuedMap& m1, const SetValuedMap& m2, const SetFamily& a1,
                       const SetFamily& a2, const SetFamily& b1, const SetFamily& b2,
                       Direction direction, const Limits& limits = {});

// Two subsystems in feedback: psi1 maps (y2,u1) pairs into y1, psi2 maps
// (y1,u2) pairs into y2. Inputs live over u1 x u2, outputs over y1 x y2.
struct FeedbackSystem {
  UniversePtr y1, y2, u1, u2;
  SetValuedMap psi1, psi2;
  UniversePtr input_universe;   // u1 x u2
  UniversePtr output_universe;  // y1 x y2

  FeedbackSystem(UniversePtr y1_, UniversePtr y2_, UniversePtr u1_, UniversePtr u2_,
                 SetValuedMap psi1_, SetValuedMap psi2_);
};

// Row (d1,d2) collects every output pair solving both membership conditions.
SetValuedMap feedback_solution_map(const FeedbackSystem& fb);

// Componentwise projection of the solution rows (side is 1 or 2).
SetValuedMap upsilon_projection(const FeedbackSystem& fb, int side);

// One loop step: union over y in y_set and (d1,d2) in d_set of
// psi_i(psi_j(y, d_j), d_i), images taken setwise.
Subset gamma_step(const FeedbackSystem& fb, int side, const Subset& y_set, const Subset& d_set);

// n-fold loop step. Iterate sequences over a finite powerset are eventually
// periodic, so a detected cycle resolves any requested n.
Subset gamma_iterate(const FeedbackSystem& fb, int side, const Subset& y_set, const Subset& d_set,
                     std::size_t n);

// Small-gain property: backward form requires, for each target member B of b,
// some member A of a whose loop iterates squeeze every point outside B into B
// within n_max steps per side; the forward form swaps the quantifiers.
// Candidate search tries generators first, then the enumerated extension.
// n_max of 0 selects the per-side default, the size of that side's output
// universe; the verdict notes whether the bound or a cycle ended the search.
Verdict small_gain_check(const FeedbackSystem& fb, const SetFamily& a, const SetFamily& b,
                         std::size_t n_max = 0, Direction direction = Direction::Backward,
                         const Limits& limits = {});

// Runs small_gain_check and then the implied stability of the feedback
// solution map: backward from the up closure of a, forward into the down
// closure of b. A passing small gain with a failing conclusion is reported
// loudly since the implication is unconditional.
Verdict small_gain_theorem(const FeedbackSystem& fb, const SetFamily& a, const SetFamily& b,
                           std::size_t n_max = 0, Direction direction = Direction::Backward,
                           const Limits& limits = {});

}  // namespace setstab
