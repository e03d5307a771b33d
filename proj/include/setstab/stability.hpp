#pragma once

#include <optional>
#include <vector>

#include "setstab/set_family.hpp"
#include "setstab/set_valued_map.hpp"
#include "setstab/verdict.hpp"

namespace setstab {

enum class Direction { Forward, Backward };

// Forward (A,B)-stability: the image of every member of a lies in b. When a is
// down-generated and b is an ideal the check reduces to the generators of a;
// otherwise the extension of a is enumerated. Abstracts Lagrange stability,
// safety and positivity.
Verdict is_forward_stable(const SetValuedMap& m, const SetFamily& a, const SetFamily& b,
                          const Limits& limits = {});

// Backward (A,B)-stability: the upper inverse of every member of b lies in a.
// Reduces to generators of b when b is up-generated and a is a filter.
// Abstracts Lyapunov stability.
Verdict is_backward_stable(const SetValuedMap& m, const SetFamily& a, const SetFamily& b,
                           const Limits& limits = {});

// Weak forward stability: every member of a has its image meeting some member
// of b. No generator shortcut; both extensions are enumerated.
Verdict is_weak_forward_stable(const SetValuedMap& m, const SetFamily& a, const SetFamily& b,
                               const Limits& limits = {});

// Weak backward stability: lower inverses of members of b lie in a.
Verdict is_weak_backward_stable(const SetValuedMap& m, const SetFamily& a, const SetFamily& b,
                                const Limits& limits = {});

// Conjunction of backward stability over the filters and forward stability
// over the ideals. Inputs must pass the matching axiom checks.
Verdict is_globally_stable(const SetValuedMap& m, const SetFamily& filter_d,
                           const SetFamily& ideal_d, const SetFamily& filter_y,
                           const SetFamily& ideal_y, const Limits& limits = {});

// Compatibility of a filter with an ideal through H = members of both:
// every member of the ideal lies below some H, every member of the filter
// above some H.
Verdict is_compatible(const SetFamily& filter, const SetFamily& ideal, const Limits& limits = {});

// Explicit extension of H = filter /\ ideal, canonical order.
std::vector<Subset> intersection_h(const SetFamily& filter, const SetFamily& ideal,
                                   const Limits& limits = {});

// Set-level gain: an onto assignment H |-> alpha(H) between the two H
// families with Psi(H) inside alpha(H) everywhere.
struct AlphaMap {
  std::vector<Subset> domain_family;    // H over the domain, canonical order
  std::vector<Subset> codomain_family;  // H over the codomain, canonical order
  std::vector<std::size_t> assignment;  // index into codomain_family per domain member
  std::vector<std::size_t> onto_witness;  // preimage index per codomain member

  const Subset& value_of(std::size_t domain_index) const {
    return codomain_family.at(assignment.at(domain_index));
  }
};

struct AlphaResult {
  std::optional<AlphaMap> alpha;
  Verdict verdict;
};

// Builds an AlphaMap certifying global stability, or reports the failing
// stability half. Requires both compatibilities (error otherwise).
AlphaResult construct_alpha(const SetValuedMap& m, const SetFamily& filter_d,
                            const SetFamily& ideal_d, const SetFamily& filter_y,
                            const SetFamily& ideal_y, const Limits& limits = {});

// Onto plus: every codomain member contains the alpha-value of some domain
// member.
Verdict verify_k_infinity(const AlphaMap& alpha);

// Pointwise gain kappa(d) = alpha(h(d)) where h(d) is the smallest member of
// the domain H family containing d.
struct KappaMap {
  UniversePtr domain_universe;
  Subset covered;                          // union of the domain H family
  std::vector<std::optional<Subset>> selector;  // h(d) per covered element
  std::vector<std::optional<Subset>> value;     // kappa(d) per covered element
};

KappaMap construct_kappa(const AlphaMap& alpha);

// Throws std::domain_error for points outside the covered set.
const Subset& kappa_at(const KappaMap& kappa, std::size_t element);

// Upward directedness of an explicit family: every two members lie below a
// common member.
Verdict is_uniform_property(const SetFamily& p, const Limits& limits = {});

// Down closure of an upward-directed family; the result is an ideal.
SetFamily ideal_from_uniform_property(const SetFamily& p, const Limits& limits = {});

// Semilattice-homomorphism reading of stability: backward checks that upper
// inverses preserve meets and land in a; forward checks that images preserve
// joins and land in b. Requires a and b to pass the matching axiom check.
Verdict check_semilattice_hom(const SetValuedMap& m, const SetFamily& a, const SetFamily& b,
                              Direction direction, const Limits& limits = {});

}  // namespace setstab
