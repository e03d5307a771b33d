#include "doctest.h"
#include "helpers.hpp"
#include "setstab/interconnect.hpp"
#include "setstab/modelgen.hpp"

using namespace setstab;
using testkit::Rng;

namespace {

Subset of(const UniversePtr& u, std::initializer_list<std::size_t> members) {
  return Subset::of(u, std::vector<std::size_t>(members));
}

// Random instances that satisfy the series hypotheses by construction.
struct SeriesInstance {
  SetValuedMap m1, m2;
  SetFamily a1, b1, a2, b2;
};

SeriesInstance random_backward_series(const UniversePtr& d1, const UniversePtr& y1,
                                      const UniversePtr& y2, Rng& rng) {
  while (true) {
    SetValuedMap m1 = testkit::random_map(d1, y1, rng);
    SetValuedMap m2 = testkit::random_map(y1, y2, rng);
    std::vector<Subset> b1_sets = testkit::random_generators(y1, rng, 2);
    SetFamily b1 = SetFamily::explicit_family(b1_sets);
    std::vector<Subset> a1_sets;
    for (const auto& b : b1.sets()) a1_sets.push_back(upper_inverse(m1, b));
    SetFamily a1 = SetFamily::explicit_family(a1_sets);
    // A subfamily of b1 keeps the inclusion hypothesis.
    SetFamily a2 = SetFamily::explicit_family({b1.sets().front()});
    std::vector<Subset> b2_sets;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << y2->size); ++m) {
      Subset candidate = subset_from_mask(y2, m);
      if (member_of(a2, upper_inverse(m2, candidate))) b2_sets.push_back(candidate);
    }
    if (b2_sets.empty()) continue;
    std::shuffle(b2_sets.begin(), b2_sets.end(), rng);
    const std::size_t keep = 1 + rng() % std::min<std::size_t>(b2_sets.size(), 3);
    b2_sets.erase(b2_sets.begin() + static_cast<std::ptrdiff_t>(keep), b2_sets.end());
    return SeriesInstance{std::move(m1), std::move(m2), std::move(a1), std::move(b1),
                          std::move(a2), SetFamily::explicit_family(std::move(b2_sets))};
  }
}

SeriesInstance random_forward_series(const UniversePtr& d1, const UniversePtr& y1,
                                     const UniversePtr& y2, Rng& rng) {
  SetValuedMap m1 = testkit::random_map(d1, y1, rng);
  SetValuedMap m2 = testkit::random_map(y1, y2, rng);
  SetFamily a1 = SetFamily::explicit_family(testkit::random_generators(d1, rng, 2));
  std::vector<Subset> b1_sets;
  for (const auto& a : a1.sets()) b1_sets.push_back(image_of_set(m1, a));
  SetFamily b1 = SetFamily::explicit_family(b1_sets);
  std::vector<Subset> a2_sets = b1.sets();
  a2_sets.push_back(testkit::random_subset(y1, rng));
  SetFamily a2 = SetFamily::explicit_family(a2_sets);
  std::vector<Subset> b2_sets;
  for (const auto& a : a2.sets()) b2_sets.push_back(image_of_set(m2, a));
  SetFamily b2 = SetFamily::explicit_family(b2_sets);
  return SeriesInstance{std::move(m1), std::move(m2), std::move(a1), std::move(b1),
                        std::move(a2), std::move(b2)};
}

}  // namespace

TEST_CASE("series composition with the identity") {
  auto u = make_universe(3);
  Rng rng(211);
  SetValuedMap m = testkit::random_map(u, u, rng);
  SetValuedMap composed = series_map(SetValuedMap::identity(u), m);
  for (std::size_t i = 0; i < u->size; ++i) CHECK(composed.row(i) == m.row(i));

  auto other = make_universe(4);
  SetValuedMap incompatible = testkit::random_map(other, other, rng);
  CHECK_THROWS_AS(series_map(m, incompatible), std::invalid_argument);
}

TEST_CASE("series with an explicit embedding") {
  auto y1 = make_universe({"p", "q"});
  auto d2 = make_universe({"p", "q", "r"});
  auto y2 = make_universe({"z"});
  SetValuedMap stage1 = SetValuedMap::identity(y1);
  SetValuedMap embed(y1, d2, {Subset::singleton(d2, 0), Subset::singleton(d2, 1)});
  SetValuedMap stage2(d2, y2, {Subset::full(y2), Subset::empty(y2), Subset::full(y2)});
  SetValuedMap chain = series_map(stage1, embed, stage2);
  CHECK(chain.row(0) == Subset::full(y2));
  CHECK(chain.row(1).none());
}

TEST_CASE("series preserves backward stability under the inclusion hypothesis") {
  Rng rng(223);
  auto d1 = make_universe(3);
  auto y1 = make_universe(3);
  auto y2 = make_universe(3);
  for (int i = 0; i < 100; ++i) {
    SeriesInstance inst = random_backward_series(d1, y1, y2, rng);
    Verdict v = series_check(inst.m1, inst.m2, inst.a1, inst.b1, inst.a2, inst.b2,
                             Direction::Backward);
    CHECK(v.holds);
  }
}

TEST_CASE("series preserves forward stability under the inclusion hypothesis") {
  Rng rng(227);
  auto d1 = make_universe(3);
  auto y1 = make_universe(3);
  auto y2 = make_universe(3);
  for (int i = 0; i < 100; ++i) {
    SeriesInstance inst = random_forward_series(d1, y1, y2, rng);
    Verdict v = series_check(inst.m1, inst.m2, inst.a1, inst.b1, inst.a2, inst.b2,
                             Direction::Forward);
    CHECK(v.holds);
  }
}

TEST_CASE("series hypothesis violations are reported") {
  auto u = make_universe(2);
  SetValuedMap id = SetValuedMap::identity(u);
  SetFamily a = SetFamily::explicit_family({of(u, {0})});
  SetFamily other = SetFamily::explicit_family({of(u, {1})});
  Verdict v = series_check(id, id, a, a, other, other, Direction::Backward);
  CHECK_FALSE(v.holds);
  bool mentioned = false;
  for (const auto& n : v.notes)
    if (n.find("hypothesis") != std::string::npos) mentioned = true;
  CHECK(mentioned);
}

TEST_CASE("family inclusion") {
  auto u = make_universe({"a", "b"});
  SetFamily up_a = SetFamily::up_generated({of(u, {0})});
  CHECK(family_subset_of(up_a, up_a));
  CHECK(family_subset_of(SetFamily::down_generated({of(u, {0})}),
                         SetFamily::down_generated({Subset::full(u)})));

  Rng rng(229);
  auto u4 = make_universe(4);
  for (int i = 0; i < 100; ++i) {
    SetFamily a = testkit::random_family(u4, rng);
    SetFamily b = testkit::random_family(u4, rng);
    bool direct = true;
    for (auto m : testkit::oracle::extension(a))
      if (!testkit::oracle::contains(testkit::oracle::extension(b), m)) {
        direct = false;
        break;
      }
    CHECK(family_subset_of(a, b) == direct);
  }
}

TEST_CASE("parallel identity pair with principal families") {
  auto u = make_universe(2);
  SetValuedMap id = SetValuedMap::identity(u);
  SetFamily principal_up = SetFamily::up_generated({of(u, {0})});
  CHECK(parallel_check(id, id, principal_up, principal_up, principal_up, principal_up,
                       Direction::Backward)
            .holds);
  SetFamily principal_down = SetFamily::down_generated({of(u, {0})});
  CHECK(parallel_check(id, id, principal_down, principal_down, principal_down, principal_down,
                       Direction::Forward)
            .holds);
}

TEST_CASE("parallel interconnections keep forward stability over rectangle bases") {
  Rng rng(233);
  auto d = make_universe(3);
  auto c1 = make_universe(3);
  auto c2 = make_universe(2);
  for (int i = 0; i < 100; ++i) {
    SetValuedMap m1 = testkit::random_map(d, c1, rng);
    SetValuedMap m2 = testkit::random_map(d, c2, rng);
    SetFamily a2 = testkit::random_ideal(d, rng);
    SetFamily a1 = SetFamily::down_generated({a2.sets().front()});
    std::vector<Subset> b1_sets, b2_sets;
    for (const auto& a : enumerate_family(a1)) b1_sets.push_back(image_of_set(m1, a));
    for (const auto& a : enumerate_family(a2)) {
      b1_sets.push_back(image_of_set(m1, a));
      b2_sets.push_back(image_of_set(m2, a));
    }
    SetFamily b1 = SetFamily::explicit_family(b1_sets);
    SetFamily b2 = SetFamily::explicit_family(b2_sets);
    CHECK(parallel_check(m1, m2, a1, a2, b1, b2, Direction::Forward).holds);
  }
}

TEST_CASE("parallel interconnections keep backward stability over rectangle bases") {
  Rng rng(239);
  auto d = make_universe(3);
  auto c1 = make_universe(3);
  auto c2 = make_universe(2);
  int built = 0;
  for (int i = 0; i < 400 && built < 100; ++i) {
    SetValuedMap m1 = testkit::random_map(d, c1, rng);
    SetValuedMap m2 = testkit::random_map(d, c2, rng);
    SetFamily a2 = testkit::random_filter(d, rng);
    SetFamily a1 = SetFamily::up_generated({a2.sets().front() | testkit::random_subset(d, rng)});
    auto collect = [&](const SetValuedMap& m, const UniversePtr& cod, const SetFamily& a) {
      std::vector<Subset> sets;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cod->size); ++mask) {
        Subset candidate = subset_from_mask(cod, mask);
        if (member_of(a, upper_inverse(m, candidate))) sets.push_back(candidate);
      }
      return sets;
    };
    auto b1_sets = collect(m1, c1, a1);
    auto b2_sets = collect(m2, c2, a2);
    if (b1_sets.empty() || b2_sets.empty()) continue;
    ++built;
    SetFamily b1 = SetFamily::explicit_family(b1_sets);
    SetFamily b2 = SetFamily::explicit_family(b2_sets);
    CHECK(parallel_check(m1, m2, a1, a2, b1, b2, Direction::Backward).holds);
  }
  CHECK(built == 100);
}

TEST_CASE("feedback solution map basics") {
  FeedbackSystem fb = example_halving_feedback();
  SetValuedMap solution = feedback_solution_map(fb);
  Subset origin = solution.row(pair_index(0, 0, fb.u2->size));
  CHECK(origin == Subset::singleton(fb.output_universe, pair_index(0, 0, fb.y2->size)));
  for (const auto& row : solution.rows())
    CHECK(row.count() <= fb.y1->size * fb.y2->size);

  auto y = make_universe(2);
  auto u = make_universe(2);
  SetValuedMap empty1 = SetValuedMap::constant_empty(pair_encode(y, u), y);
  SetValuedMap empty2 = SetValuedMap::constant_empty(pair_encode(y, u), y);
  FeedbackSystem silent(y, y, u, u, empty1, empty2);
  SetValuedMap no_solutions = feedback_solution_map(silent);
  for (const auto& row : no_solutions.rows()) CHECK(row.none());
}

TEST_CASE("projections cover the solution rectangle") {
  FeedbackSystem fb = example_halving_feedback();
  SetValuedMap up1 = upsilon_projection(fb, 1);
  CHECK(up1.row(pair_index(0, 0, fb.u2->size)) == Subset::singleton(fb.y1, 0));

  Rng rng(241);
  auto y = make_universe(3);
  auto u = make_universe(2);
  for (int i = 0; i < 50; ++i) {
    SetValuedMap psi1 = testkit::random_map(pair_encode(y, u), y, rng);
    SetValuedMap psi2 = testkit::random_map(pair_encode(y, u), y, rng);
    FeedbackSystem sys(y, y, u, u, psi1, psi2);
    SetValuedMap solution = feedback_solution_map(sys);
    SetValuedMap u1 = upsilon_projection(sys, 1);
    SetValuedMap u2 = upsilon_projection(sys, 2);
    for (std::size_t d = 0; d < sys.input_universe->size; ++d)
      for (std::size_t e : solution.row(d).members()) {
        auto [a, b] = pair_split(e, sys.y2->size);
        CHECK(u1.row(d).test(a));
        CHECK(u2.row(d).test(b));
      }
  }
}

TEST_CASE("gamma step on the halving loop") {
  FeedbackSystem fb = example_halving_feedback();
  Subset d00 = Subset::singleton(fb.input_universe, pair_index(0, 0, fb.u2->size));
  Subset from3 = gamma_step(fb, 1, Subset::singleton(fb.y1, 3), d00);
  CHECK(from3 == Subset::singleton(fb.y1, 0));

  CHECK(gamma_step(fb, 1, Subset::empty(fb.y1), d00).none());

  Rng rng(251);
  auto y = make_universe(3);
  auto u = make_universe(2);
  for (int i = 0; i < 30; ++i) {
    SetValuedMap psi1 = testkit::random_map(pair_encode(y, u), y, rng);
    SetValuedMap psi2 = testkit::random_map(pair_encode(y, u), y, rng);
    FeedbackSystem sys(y, y, u, u, psi1, psi2);
    Subset y_small = testkit::random_subset(y, rng);
    Subset y_big = y_small | testkit::random_subset(y, rng);
    Subset d_small = testkit::random_subset(sys.input_universe, rng);
    Subset d_big = d_small | testkit::random_subset(sys.input_universe, rng);
    CHECK(gamma_step(sys, 1, y_small, d_small).subset_of(gamma_step(sys, 1, y_big, d_small)));
    CHECK(gamma_step(sys, 1, y_small, d_small).subset_of(gamma_step(sys, 1, y_small, d_big)));
    for (std::size_t n : {2u, 3u}) {
      CHECK(gamma_iterate(sys, 2, y_small, d_small, n)
                .subset_of(gamma_iterate(sys, 2, y_big, d_small, n)));
      CHECK(gamma_iterate(sys, 2, y_small, d_small, n)
                .subset_of(gamma_iterate(sys, 2, y_small, d_big, n)));
    }
  }
}

TEST_CASE("gamma iterates and the loop membership property") {
  FeedbackSystem fb = example_halving_feedback();
  Subset d00 = Subset::singleton(fb.input_universe, pair_index(0, 0, fb.u2->size));
  Subset y3 = Subset::singleton(fb.y1, 3);
  CHECK(gamma_iterate(fb, 1, y3, d00, 1) == gamma_step(fb, 1, y3, d00));
  for (std::size_t n = 2; n <= 8; ++n)
    CHECK(gamma_iterate(fb, 1, y3, d00, n) == Subset::singleton(fb.y1, 0));

  Rng rng(257);
  auto y = make_universe(3);
  auto u = make_universe(2);
  for (int i = 0; i < 50; ++i) {
    SetValuedMap psi1 = testkit::random_map(pair_encode(y, u), y, rng);
    SetValuedMap psi2 = testkit::random_map(pair_encode(y, u), y, rng);
    FeedbackSystem sys(y, y, u, u, psi1, psi2);
    for (std::uint64_t dmask = 1; dmask < (std::uint64_t{1} << sys.input_universe->size);
         dmask += 3) {
      Subset dset = subset_from_mask(sys.input_universe, dmask);
      for (int side = 1; side <= 2; ++side) {
        SetValuedMap proj = upsilon_projection(sys, side);
        Subset reachable = image_of_set(proj, dset);
        for (std::size_t point : reachable.members())
          for (std::size_t n = 1; n <= 6; ++n) {
            Subset it = gamma_iterate(sys, side, Subset::singleton(side == 1 ? sys.y1 : sys.y2, point),
                                      dset, n);
            CHECK(it.test(point));
          }
      }
    }
  }
}

TEST_CASE("small gain on the halving loop and its amplifying twin") {
  FeedbackSystem fb = example_halving_feedback();
  SetFamily full_b = SetFamily::explicit_family({Subset::full(fb.output_universe)});
  SetFamily any_a = SetFamily::explicit_family({Subset::full(fb.input_universe)});
  CHECK(small_gain_check(fb, any_a, full_b, 1).holds);  // empty outside set

  std::vector<Subset> sublevels;
  for (long long k = 1; k <= 3; ++k) {
    Subset s(fb.input_universe);
    for (std::size_t e = 0; e < fb.input_universe->size; ++e)
      if ((*fb.input_universe->magnitude)[e] <= Rational(k)) s.set(e);
    sublevels.push_back(std::move(s));
  }
  SetFamily a = SetFamily::explicit_family(sublevels);
  SetFamily b = product_base(sublevel_ideal(fb.y1, {Rational(1), Rational(2)}),
                             sublevel_ideal(fb.y2, {Rational(1), Rational(2)}));
  CHECK(small_gain_check(fb, a, b, 3).holds);
  CHECK(small_gain_theorem(fb, a, b, 3).holds);

  // Saturating growth never contracts, so the proper targets fail.
  auto q = fb.y1;
  UniversePtr dom = pair_encode(q, q);
  std::vector<Subset> rows;
  for (std::size_t y = 0; y < q->size; ++y)
    for (std::size_t d = 0; d < q->size; ++d)
      rows.push_back(Subset::singleton(q, std::min(y + d, q->size - 1)));
  SetValuedMap grow(dom, q, rows);
  FeedbackSystem amplifier(q, q, q, q, grow, grow);
  std::vector<Subset> amp_sub;
  for (long long k = 1; k <= 3; ++k) {
    Subset s(amplifier.input_universe);
    for (std::size_t e = 0; e < amplifier.input_universe->size; ++e)
      if ((*amplifier.input_universe->magnitude)[e] <= Rational(k)) s.set(e);
    amp_sub.push_back(std::move(s));
  }
  SetFamily amp_a = SetFamily::explicit_family(amp_sub);
  SetFamily amp_b = product_base(sublevel_ideal(q, {Rational(2)}), sublevel_ideal(q, {Rational(2)}));
  Verdict failing = small_gain_check(amplifier, amp_a, amp_b, 3);
  CHECK_FALSE(failing.holds);
  Verdict theorem = small_gain_theorem(amplifier, amp_a, amp_b, 3);
  CHECK_FALSE(theorem.holds);  // no small gain, so no claim is made
}

TEST_CASE("systems passing the small-gain check satisfy the implied stability") {
  Rng rng(263);
  auto y = make_universe(3);
  auto u = make_universe(2);
  int passing = 0;
  for (int i = 0; i < 4000 && passing < 100; ++i) {
    SetValuedMap psi1 = testkit::random_map(pair_encode(y, u), y, rng);
    SetValuedMap psi2 = testkit::random_map(pair_encode(y, u), y, rng);
    FeedbackSystem sys(y, y, u, u, psi1, psi2);
    std::vector<Subset> a_sets = {
        testkit::random_subset(sys.input_universe, rng, /*allow_empty=*/false)};
    std::vector<Subset> b_sets = {testkit::random_subset(sys.output_universe, rng)};
    if (rng() % 2) b_sets.push_back(testkit::random_subset(sys.output_universe, rng));
    SetFamily a = SetFamily::explicit_family(a_sets);
    SetFamily b = SetFamily::explicit_family(b_sets);
    Direction dir = rng() % 2 ? Direction::Backward : Direction::Forward;
    Verdict gain = small_gain_check(sys, a, b, 4, dir);
    if (!gain.holds) continue;
    ++passing;
    CHECK(small_gain_theorem(sys, a, b, 4, dir).holds);
  }
  CHECK(passing == 100);
}
