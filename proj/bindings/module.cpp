#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "setstab/interconnect.hpp"
#include "setstab/modelgen.hpp"
#include "setstab/spec_doc.hpp"

namespace py = pybind11;
using namespace setstab;

namespace {

Rational rational_from_object(const py::object& obj) {
  if (py::isinstance<Rational>(obj)) return obj.cast<Rational>();
  if (py::isinstance<py::int_>(obj)) return Rational(obj.cast<long long>());
  if (py::isinstance<py::float_>(obj)) return rational_from_double(obj.cast<double>());
  if (py::isinstance<py::str>(obj)) return rational_from_string(obj.cast<std::string>());
  throw py::type_error("expected a rational (int, float, str or Rational)");
}

std::vector<Rational> rationals_from_list(const std::vector<py::object>& values) {
  std::vector<Rational> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(rational_from_object(v));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact filters-and-ideals stability checks for set-valued maps";

  py::register_exception<EnumerationRefused>(m, "EnumerationRefused");

  py::class_<Rational>(m, "Rational")
      .def(py::init<long long>())
      .def(py::init<long long, long long>())
      .def_readonly("num", &Rational::num)
      .def_readonly("den", &Rational::den)
      .def("__str__", &Rational::str)
      .def("__repr__", [](const Rational& r) { return "Rational(" + r.str() + ")"; })
      .def(py::self == py::self)
      .def(py::self < py::self);

  py::class_<Universe, std::shared_ptr<Universe>>(m, "Universe")
      .def_readonly("size", &Universe::size)
      .def_readonly("labels", &Universe::labels)
      .def("label_of", &Universe::label_of)
      .def("index_of_label", &Universe::index_of_label)
      .def("__len__", [](const Universe& u) { return u.size; })
      .def("__repr__",
           [](const Universe& u) { return "Universe(size=" + std::to_string(u.size) + ")"; });

  m.def(
      "make_universe",
      [](std::size_t size, std::optional<std::vector<std::string>> labels,
         std::optional<std::vector<std::vector<py::object>>> coordinates,
         std::optional<std::vector<py::object>> magnitude,
         std::optional<std::vector<std::pair<std::size_t, std::size_t>>> order) {
        Universe u;
        u.size = size;
        u.labels = std::move(labels);
        if (coordinates) {
          std::vector<std::vector<Rational>> cs;
          for (const auto& point : *coordinates) cs.push_back(rationals_from_list(point));
          u.coordinates = std::move(cs);
        }
        if (magnitude) u.magnitude = rationals_from_list(*magnitude);
        if (order) {
          std::vector<std::uint8_t> rel(size * size, 0);
          for (std::size_t i = 0; i < size; ++i) rel[i * size + i] = 1;
          for (auto [a, b] : *order) rel.at(a * size + b) = 1;
          for (std::size_t k = 0; k < size; ++k)
            for (std::size_t i = 0; i < size; ++i)
              for (std::size_t j = 0; j < size; ++j)
                if (rel[i * size + k] && rel[k * size + j]) rel[i * size + j] = 1;
          u.order = std::move(rel);
        }
        return make_universe(std::move(u));
      },
      py::arg("size"), py::arg("labels") = std::nullopt, py::arg("coordinates") = std::nullopt,
      py::arg("magnitude") = std::nullopt, py::arg("order") = std::nullopt);
  m.def("grid_universe", [](const py::object& start, const py::object& step, std::size_t count) {
    return grid_universe(rational_from_object(start), rational_from_object(step), count);
  });
  m.def("pair_encode", &pair_encode);
  m.def("pair_index", &pair_index);
  m.def("pair_split", &pair_split);
  m.def("same_universe", &same_universe);

  py::class_<Subset>(m, "Subset")
      .def(py::init(&Subset::of), py::arg("universe"), py::arg("members") = std::vector<std::size_t>{})
      .def_static("empty", &Subset::empty)
      .def_static("full", &Subset::full)
      .def_static("singleton", &Subset::singleton)
      .def_property_readonly("universe", &Subset::universe)
      .def("test", &Subset::test)
      .def("members", &Subset::members)
      .def("count", &Subset::count)
      .def("subset_of", &Subset::subset_of)
      .def("intersects", &Subset::intersects)
      .def(py::self & py::self)
      .def(py::self | py::self)
      .def(py::self == py::self)
      .def("__len__", &Subset::count)
      .def("__str__", &Subset::str)
      .def("__repr__", [](const Subset& s) { return "Subset(" + s.str() + ")"; });
  m.def("complement", &complement);

  py::enum_<FamilyKind>(m, "FamilyKind")
      .value("EXPLICIT", FamilyKind::Explicit)
      .value("UP", FamilyKind::Up)
      .value("DOWN", FamilyKind::Down);

  py::class_<SetFamily>(m, "SetFamily")
      .def_static("explicit_family", &SetFamily::explicit_family)
      .def_static("up_generated", &SetFamily::up_generated)
      .def_static("down_generated", &SetFamily::down_generated)
      .def_property_readonly("kind", &SetFamily::kind)
      .def_property_readonly("sets", &SetFamily::sets)
      .def_property_readonly("universe", &SetFamily::universe)
      .def("__repr__", [](const SetFamily& f) {
        std::string kind = f.kind() == FamilyKind::Explicit ? "explicit"
                           : f.kind() == FamilyKind::Up     ? "up"
                                                            : "down";
        return "SetFamily(" + kind + ", " + std::to_string(f.sets().size()) + " sets)";
      });

  py::class_<Limits>(m, "Limits")
      .def(py::init<>())
      .def_readwrite("enum_ceiling", &Limits::enum_ceiling)
      .def_readwrite("trajectory_ceiling", &Limits::trajectory_ceiling);

  m.def("up_closure", &up_closure);
  m.def("down_closure", &down_closure);
  m.def("member_of", &member_of);
  m.def("enumerate_family", &enumerate_family, py::arg("family"), py::arg("limits") = Limits{});
  m.def("dualize", &dualize);
  m.def("product_base", &product_base);
  m.def("family_union", &family_union);

  py::class_<WitnessItem>(m, "WitnessItem")
      .def_readonly("name", &WitnessItem::name)
      .def_readonly("value", &WitnessItem::value)
      .def_readonly("set", &WitnessItem::set);

  py::class_<Verdict>(m, "Verdict")
      .def_readonly("holds", &Verdict::holds)
      .def_readonly("witness", &Verdict::witness)
      .def_readonly("notes", &Verdict::notes)
      .def("__bool__", [](const Verdict& v) { return v.holds; })
      .def("__repr__", [](const Verdict& v) {
        std::string out = v.holds ? "Verdict(holds" : "Verdict(fails";
        for (const auto& w : v.witness) out += ", " + w.name + "=" + w.value;
        out += ")";
        return out;
      });

  m.def("is_filter", &is_filter, py::arg("family"), py::arg("limits") = Limits{});
  m.def("is_ideal", &is_ideal, py::arg("family"), py::arg("limits") = Limits{});
  m.def("is_filter_base", &is_filter_base, py::arg("family"), py::arg("limits") = Limits{});
  m.def("is_ideal_base", &is_ideal_base, py::arg("family"), py::arg("limits") = Limits{});

  py::class_<SetValuedMap>(m, "SetValuedMap")
      .def(py::init<UniversePtr, UniversePtr, std::vector<Subset>>())
      .def_static("identity", &SetValuedMap::identity)
      .def_static("constant_empty", &SetValuedMap::constant_empty)
      .def_property_readonly("domain", &SetValuedMap::domain)
      .def_property_readonly("codomain", &SetValuedMap::codomain)
      .def_property_readonly("rows", &SetValuedMap::rows)
      .def("row", &SetValuedMap::row)
      .def("__repr__", [](const SetValuedMap& m_) {
        return "SetValuedMap(" + std::to_string(m_.domain()->size) + " -> " +
               std::to_string(m_.codomain()->size) + ")";
      });

  m.def("image_of_set", &image_of_set);
  m.def("upper_inverse", &upper_inverse);
  m.def("lower_inverse", &lower_inverse);
  m.def("compose_maps", &compose_maps);
  m.def("product_map", &product_map);

  py::enum_<Direction>(m, "Direction")
      .value("FORWARD", Direction::Forward)
      .value("BACKWARD", Direction::Backward);

  m.def("is_forward_stable", &is_forward_stable, py::arg("map"), py::arg("a"), py::arg("b"),
        py::arg("limits") = Limits{});
  m.def("is_backward_stable", &is_backward_stable, py::arg("map"), py::arg("a"), py::arg("b"),
        py::arg("limits") = Limits{});
  m.def("is_weak_forward_stable", &is_weak_forward_stable, py::arg("map"), py::arg("a"),
        py::arg("b"), py::arg("limits") = Limits{});
  m.def("is_weak_backward_stable", &is_weak_backward_stable, py::arg("map"), py::arg("a"),
        py::arg("b"), py::arg("limits") = Limits{});
  m.def("is_globally_stable", &is_globally_stable, py::arg("map"), py::arg("filter_d"),
        py::arg("ideal_d"), py::arg("filter_y"), py::arg("ideal_y"), py::arg("limits") = Limits{});
  m.def("is_compatible", &is_compatible, py::arg("filter"), py::arg("ideal"),
        py::arg("limits") = Limits{});
  m.def("intersection_h", &intersection_h, py::arg("filter"), py::arg("ideal"),
        py::arg("limits") = Limits{});

  py::class_<AlphaMap>(m, "AlphaMap")
      .def_readonly("domain_family", &AlphaMap::domain_family)
      .def_readonly("codomain_family", &AlphaMap::codomain_family)
      .def_readonly("assignment", &AlphaMap::assignment)
      .def_readonly("onto_witness", &AlphaMap::onto_witness)
      .def("value_of", &AlphaMap::value_of);

  py::class_<AlphaResult>(m, "AlphaResult")
      .def_readonly("alpha", &AlphaResult::alpha)
      .def_readonly("verdict", &AlphaResult::verdict)
      .def("__bool__", [](const AlphaResult& r) { return r.alpha.has_value(); });

  m.def("construct_alpha", &construct_alpha, py::arg("map"), py::arg("filter_d"),
        py::arg("ideal_d"), py::arg("filter_y"), py::arg("ideal_y"), py::arg("limits") = Limits{});
  m.def("verify_k_infinity", &verify_k_infinity);

  py::class_<KappaMap>(m, "KappaMap")
      .def_readonly("covered", &KappaMap::covered)
      .def("at", [](const KappaMap& k, std::size_t element) { return kappa_at(k, element); });
  m.def("construct_kappa", &construct_kappa);

  m.def("is_uniform_property", &is_uniform_property, py::arg("family"),
        py::arg("limits") = Limits{});
  m.def("ideal_from_uniform_property", &ideal_from_uniform_property, py::arg("family"),
        py::arg("limits") = Limits{});
  m.def("check_semilattice_hom", &check_semilattice_hom, py::arg("map"), py::arg("a"),
        py::arg("b"), py::arg("direction"), py::arg("limits") = Limits{});

  m.def("series_map", py::overload_cast<const SetValuedMap&, const SetValuedMap&>(&series_map));
  m.def("series_map",
        py::overload_cast<const SetValuedMap&, const SetValuedMap&, const SetValuedMap&>(
            &series_map),
        py::arg("m1"), py::arg("embedding"), py::arg("m2"));
  m.def("family_subset_of", &family_subset_of, py::arg("a"), py::arg("b"),
        py::arg("limits") = Limits{});
  m.def("series_check", &series_check, py::arg("m1"), py::arg("m2"), py::arg("a1"), py::arg("b1"),
        py::arg("a2"), py::arg("b2"), py::arg("direction"), py::arg("limits") = Limits{});
  m.def("parallel_check", &parallel_check, py::arg("m1"), py::arg("m2"), py::arg("a1"),
        py::arg("a2"), py::arg("b1"), py::arg("b2"), py::arg("direction"),
        py::arg("limits") = Limits{});

  py::class_<FeedbackSystem>(m, "FeedbackSystem")
      .def(py::init<UniversePtr, UniversePtr, UniversePtr, UniversePtr, SetValuedMap,
                    SetValuedMap>(),
           py::arg("y1"), py::arg("y2"), py::arg("u1"), py::arg("u2"), py::arg("psi1"),
           py::arg("psi2"))
      .def_readonly("y1", &FeedbackSystem::y1)
      .def_readonly("y2", &FeedbackSystem::y2)
      .def_readonly("u1", &FeedbackSystem::u1)
      .def_readonly("u2", &FeedbackSystem::u2)
      .def_readonly("input_universe", &FeedbackSystem::input_universe)
      .def_readonly("output_universe", &FeedbackSystem::output_universe);

  m.def("feedback_solution_map", &feedback_solution_map);
  m.def("upsilon_projection", &upsilon_projection);
  m.def("gamma_step", &gamma_step);
  m.def("gamma_iterate", &gamma_iterate);
  m.def("small_gain_check", &small_gain_check, py::arg("system"), py::arg("a"), py::arg("b"),
        py::arg("n_max") = 0, py::arg("direction") = Direction::Backward, py::arg("limits") = Limits{});
  m.def("small_gain_theorem", &small_gain_theorem, py::arg("system"), py::arg("a"), py::arg("b"),
        py::arg("n_max") = 0, py::arg("direction") = Direction::Backward, py::arg("limits") = Limits{});

  py::class_<TransitionRelation>(m, "TransitionRelation")
      .def(py::init<UniversePtr, SetValuedMap>())
      .def_readonly("states", &TransitionRelation::states)
      .def_readonly("step", &TransitionRelation::step);

  py::class_<TrajectoryUniverse>(m, "TrajectoryUniverse")
      .def_readonly("base", &TrajectoryUniverse::base)
      .def_readonly("horizon", &TrajectoryUniverse::horizon)
      .def_readonly("universe", &TrajectoryUniverse::universe)
      .def_readonly("sequences", &TrajectoryUniverse::sequences);

  py::class_<SolutionSystem>(m, "SolutionSystem")
      .def_readonly("trajectories", &SolutionSystem::trajectories)
      .def_readonly("map", &SolutionSystem::map);

  m.def("build_trajectory_universe", &build_trajectory_universe, py::arg("relation"),
        py::arg("horizon"), py::arg("limits") = Limits{});
  m.def("solution_map", &solution_map, py::arg("relation"), py::arg("horizon"),
        py::arg("limits") = Limits{});

  py::enum_<Metric>(m, "Metric")
      .value("EUCLIDEAN", Metric::Euclidean)
      .value("CHEBYSHEV", Metric::Chebyshev);

  m.def(
      "ball_filter",
      [](const UniversePtr& u, const Subset& center, const std::vector<py::object>& radii,
         Metric metric) { return ball_filter(u, center, rationals_from_list(radii), metric); },
      py::arg("universe"), py::arg("center"), py::arg("radii"),
      py::arg("metric") = Metric::Euclidean);
  m.def(
      "sublevel_ideal",
      [](const UniversePtr& u, const std::vector<py::object>& levels) {
        return sublevel_ideal(u, rationals_from_list(levels));
      },
      py::arg("universe"), py::arg("levels"));
  m.def(
      "sublevel_covers",
      [](const UniversePtr& u, const std::vector<py::object>& levels) {
        return sublevel_covers(u, rationals_from_list(levels));
      },
      py::arg("universe"), py::arg("levels"));
  m.def("bounded_subsets_ideal", &bounded_subsets_ideal);
  m.def("safety_ideal", &safety_ideal, py::arg("safe_regions"), py::arg("limits") = Limits{});
  m.def("positivity_ideal", &positivity_ideal, py::arg("universe"), py::arg("zero_element"));

  py::class_<FixtureCheck>(m, "FixtureCheck")
      .def_readonly("id", &FixtureCheck::id)
      .def_readonly("description", &FixtureCheck::description)
      .def_readonly("expected", &FixtureCheck::expected)
      .def_readonly("verdict", &FixtureCheck::verdict);
  py::class_<FixtureSuite>(m, "FixtureSuite")
      .def_readonly("name", &FixtureSuite::name)
      .def_readonly("checks", &FixtureSuite::checks);

  m.def("example_weak_stability_relation", [](const py::object& p) {
    return example_weak_stability_relation(rational_from_object(p));
  });
  m.def("example_weak_lagrange_relation", &example_weak_lagrange_relation);
  m.def("example_parallel_counterexample", &example_parallel_counterexample);
  m.def("example_halving_feedback", &example_halving_feedback);
  m.def("run_all_fixtures", &run_all_fixtures, py::arg("limits") = Limits{});

  py::class_<ParallelCounterexample>(m, "ParallelCounterexample")
      .def_readonly("grid", &ParallelCounterexample::grid)
      .def_readonly("m1", &ParallelCounterexample::m1)
      .def_readonly("m2", &ParallelCounterexample::m2)
      .def_readonly("d", &ParallelCounterexample::d)
      .def_readonly("domain_filter", &ParallelCounterexample::domain_filter)
      .def_readonly("codomain_filter1", &ParallelCounterexample::codomain_filter1)
      .def_readonly("codomain_filter2", &ParallelCounterexample::codomain_filter2);

  // Declaration documents: parse, run, emit.
  m.def("run_spec_text", [](const std::string& text, const Limits& limits, const std::string& fmt) {
    SpecDocument doc = parse_spec(text);
    Report report = run_queries(doc, limits);
    ReportFormat f = fmt == "jsonlines" ? ReportFormat::JsonLines : ReportFormat::Text;
    return py::make_tuple(emit_report(report, f), report_exit_code(report));
  }, py::arg("text"), py::arg("limits") = Limits{}, py::arg("format") = "text");
}
