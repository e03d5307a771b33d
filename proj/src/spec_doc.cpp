#include "setstab/spec_doc.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "json.hpp"

namespace setstab {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  throw SpecError("expected a rational (number or string)");
}

std::size_t element_index(const UniversePtr& u, const json& j, const std::string& where) {
  std::string label = j.is_string() ? j.get<std::string>() : json(j).dump();
  if (j.is_number_unsigned() || j.is_number_integer()) {
    long long v = j.get<long long>();
    if (v >= 0 && static_cast<std::size_t>(v) < u->size) return static_cast<std::size_t>(v);
    throw SpecError("element index out of range in " + where + ": " + label);
  }
  auto idx = u->index_of_label(label);
  if (!idx) throw SpecError("unknown element in " + where + ": " + label);
  return *idx;
}

Subset subset_from_json(const UniversePtr& u, const json& j, const std::string& where) {
  if (!j.is_array()) throw SpecError("expected an array of elements in " + where);
  Subset s(u);
  for (const auto& e : j) s.set(element_index(u, e, where));
  return s;
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& need(const json& obj, const char* key, const std::string& where) {
  const json* p = find(obj, key);
  if (!p) throw SpecError("missing \"" + std::string(key) + "\" in " + where);
  return *p;
}

std::string need_name(const json& obj, const std::string& where) {
  const json& n = need(obj, "name", where);
  if (!n.is_string()) throw SpecError("names must be strings in " + where);
  return n.get<std::string>();
}

void parse_universes(const json& root, SpecDocument& doc) {
  const json* arr = find(root, "universes");
  if (!arr) return;
  // A product universe may reference a sibling declared later; resolve to a
  // fixpoint so declaration order does not matter.
  std::vector<json> pending(arr->begin(), arr->end());
  bool progress = true;
  while (!pending.empty() && progress) {
    progress = false;
    std::vector<json> next;
    for (const auto& u : pending) {
      std::string name = need_name(u, "universes");
      if (doc.universes.count(name)) throw SpecError("duplicate universe name: " + name);
      if (const json* prod = find(u, "product")) {
        if (!prod->is_array() || prod->size() != 2)
          throw SpecError("product must list two universes: " + name);
        auto a = doc.universes.find((*prod)[0].get<std::string>());
        auto b = doc.universes.find((*prod)[1].get<std::string>());
        if (a == doc.universes.end() || b == doc.universes.end()) {
          next.push_back(u);
          continue;
        }
        doc.universes.emplace(name, pair_encode(a->second, b->second));
        progress = true;
        continue;
      }
      if (const json* grid = find(u, "grid")) {
        Rational start = rational_from_json(need(*grid, "start", name));
        Rational step = rational_from_json(need(*grid, "step", name));
        std::size_t count = need(*grid, "count", name).get<std::size_t>();
        doc.universes.emplace(name, grid_universe(start, step, count));
        progress = true;
        continue;
      }
      Universe built;
      built.size = need(u, "size", name).get<std::size_t>();
      if (const json* labels = find(u, "labels"))
        built.labels = labels->get<std::vector<std::string>>();
      if (const json* coords = find(u, "coordinates")) {
        std::vector<std::vector<Rational>> cs;
        for (const auto& point : *coords) {
          std::vector<Rational> p;
          for (const auto& c : point) p.push_back(rational_from_json(c));
          cs.push_back(std::move(p));
        }
        built.coordinates = std::move(cs);
      }
      if (const json* mags = find(u, "magnitude")) {
        std::vector<Rational> ms;
        for (const auto& m : *mags) ms.push_back(rational_from_json(m));
        built.magnitude = std::move(ms);
      }
      UniversePtr made;
      if (const json* order = find(u, "order")) {
        // Pairs [lesser, greater]; the reflexive transitive closure is taken
        // before the order axioms are checked.
        UniversePtr base = make_universe([&] {
          Universe plain = built;
          return plain;
        }());
        const std::size_t n = built.size;
        std::vector<std::uint8_t> rel(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = 1;
        for (const auto& pair : *order) {
          if (!pair.is_array() || pair.size() != 2)
            throw SpecError("order entries must be [lesser, greater] pairs: " + name);
          std::size_t a = element_index(base, pair[0], "order of " + name);
          std::size_t b = element_index(base, pair[1], "order of " + name);
          rel[a * n + b] = 1;
        }
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              if (rel[i * n + k] && rel[k * n + j]) rel[i * n + j] = 1;
        built.order = std::move(rel);
      }
      try {
        made = make_universe(std::move(built));
      } catch (const std::invalid_argument& e) {
        throw SpecError("universe " + name + ": " + e.what());
      }
      doc.universes.emplace(name, made);
      progress = true;
    }
    pending = std::move(next);
  }
  if (!pending.empty())
    throw SpecError("unresolved reference in product universe: " + need_name(pending.front(), "universes"));
}

const UniversePtr& universe_ref(const SpecDocument& doc, const json& j, const std::string& where) {
  if (!j.is_string()) throw SpecError("universe references must be names in " + where);
  auto it = doc.universes.find(j.get<std::string>());
  if (it == doc.universes.end())
    throw SpecError("unresolved reference to universe \"" + j.get<std::string>() + "\" in " + where);
  return it->second;
}

void parse_subsets(const json& root, SpecDocument& doc) {
  const json* arr = find(root, "subsets");
  if (!arr) return;
  for (const auto& s : *arr) {
    std::string name = need_name(s, "subsets");
    if (doc.subsets.count(name)) throw SpecError("duplicate subset name: " + name);
    const UniversePtr& u = universe_ref(doc, need(s, "universe", name), name);
    doc.subsets.emplace(name, subset_from_json(u, need(s, "members", name), name));
  }
}

void parse_families(const json& root, SpecDocument& doc) {
  const json* arr = find(root, "families");
  if (!arr) return;
  for (const auto& f : *arr) {
    std::string name = need_name(f, "families");
    if (doc.families.count(name)) throw SpecError("duplicate family name: " + name);
    const UniversePtr& u = universe_ref(doc, need(f, "universe", name), name);
    std::string kind = need(f, "kind", name).get<std::string>();
    std::vector<Subset> sets;
    for (const auto& entry : need(f, "sets", name)) {
      if (entry.is_string()) {
        auto it = doc.subsets.find(entry.get<std::string>());
        if (it == doc.subsets.end())
          throw SpecError("unresolved reference to subset \"" + entry.get<std::string>() +
                          "\" in family " + name);
        sets.push_back(it->second);
      } else {
        sets.push_back(subset_from_json(u, entry, "family " + name));
      }
    }
    SetFamily family = kind == "up"         ? SetFamily::up_generated(std::move(sets))
                       : kind == "down"     ? SetFamily::down_generated(std::move(sets))
                       : kind == "explicit" ? SetFamily::explicit_family(std::move(sets))
                                            : throw SpecError("unknown family kind \"" + kind +
                                                              "\" in " + name);
    if (const json* check = find(f, "assert")) {
      std::string axiom = check->get<std::string>();
      Verdict v = axiom == "filter"  ? is_filter(family)
                  : axiom == "ideal" ? is_ideal(family)
                                     : throw SpecError("unknown assertion \"" + axiom + "\" in " + name);
      if (!v.holds) {
        std::string detail;
        for (const auto& w : v.witness) detail += " " + w.name + "=" + w.value;
        throw SpecError("family " + name + " violates the " + axiom + " axioms:" + detail);
      }
    }
    doc.families.emplace(name, std::move(family));
  }
}

void parse_maps(const json& root, SpecDocument& doc) {
  const json* arr = find(root, "maps");
  if (!arr) return;
  for (const auto& m : *arr) {
    std::string name = need_name(m, "maps");
    if (doc.maps.count(name)) throw SpecError("duplicate map name: " + name);
    if (const json* ident = find(m, "identity")) {
      doc.maps.emplace(name, SetValuedMap::identity(universe_ref(doc, *ident, name)));
      continue;
    }
    const UniversePtr& dom = universe_ref(doc, need(m, "domain", name), name);
    const UniversePtr& cod = universe_ref(doc, need(m, "codomain", name), name);
    const json& rows_json = need(m, "rows", name);
    if (!rows_json.is_array() || rows_json.size() != dom->size)
      throw SpecError("map " + name + " needs exactly one row per domain element");
    std::vector<Subset> rows;
    for (const auto& row : rows_json) rows.push_back(subset_from_json(cod, row, "map " + name));
    doc.maps.emplace(name, SetValuedMap(dom, cod, std::move(rows)));
  }
}

void parse_feedback(const json& root, SpecDocument& doc) {
  const json* arr = find(root, "feedback_systems");
  if (!arr) return;
  for (const auto& f : *arr) {
    std::string name = need_name(f, "feedback_systems");
    if (doc.feedback_systems.count(name)) throw SpecError("duplicate feedback system name: " + name);
    auto map_ref = [&](const char* key) -> const SetValuedMap& {
      const json& j = need(f, key, name);
      auto it = doc.maps.find(j.get<std::string>());
      if (it == doc.maps.end())
        throw SpecError("unresolved reference to map \"" + j.get<std::string>() + "\" in " + name);
      return it->second;
    };
    try {
      doc.feedback_systems.emplace(
          name, FeedbackSystem(universe_ref(doc, need(f, "y1", name), name),
                               universe_ref(doc, need(f, "y2", name), name),
                               universe_ref(doc, need(f, "u1", name), name),
                               universe_ref(doc, need(f, "u2", name), name), map_ref("psi1"),
                               map_ref("psi2")));
    } catch (const std::invalid_argument& e) {
      throw SpecError("feedback system " + name + ": " + e.what());
    }
  }
}

const std::vector<std::string> kQueryTypes = {
    "forward",       "backward",       "weak-forward",  "weak-backward",
    "global",        "compatible",     "construct-alpha", "series-check",
    "parallel-check", "feedback-solve", "small-gain",    "small-gain-theorem"};

void parse_queries(const json& root, const SpecDocument& doc, std::vector<Query>& out) {
  const json* arr = find(root, "queries");
  if (!arr) return;
  std::size_t counter = 0;
  for (const auto& q : *arr) {
    Query query;
    ++counter;
    query.id = find(q, "id") ? (*find(q, "id")).get<std::string>() : "q" + std::to_string(counter);
    query.type = need(q, "type", query.id).get<std::string>();
    if (std::find(kQueryTypes.begin(), kQueryTypes.end(), query.type) == kQueryTypes.end())
      throw SpecError("unknown query type \"" + query.type + "\" in " + query.id);
    if (const json* e = find(q, "expect")) {
      std::string s = e->get<std::string>();
      if (s != "holds" && s != "fails")
        throw SpecError("expect must be \"holds\" or \"fails\" in " + query.id);
      query.expect = (s == "holds");
    }
    if (const json* n = find(q, "nmax")) {
      query.n_max = n->get<std::size_t>();
      if (query.n_max < 1) throw SpecError("nmax must be at least 1 in " + query.id);
    }
    if (const json* d = find(q, "direction")) {
      std::string s = d->get<std::string>();
      if (s != "forward" && s != "backward")
        throw SpecError("direction must be \"forward\" or \"backward\" in " + query.id);
      query.direction = s == "forward" ? Direction::Forward : Direction::Backward;
    }
    for (auto it = q.begin(); it != q.end(); ++it) {
      if (it.key() == "id" || it.key() == "type" || it.key() == "expect" || it.key() == "nmax" ||
          it.key() == "direction")
        continue;
      if (!it.value().is_string())
        throw SpecError("query field \"" + it.key() + "\" must be a name in " + query.id);
      query.refs[it.key()] = it.value().get<std::string>();
    }
    // Resolve every reference now so dangling names fail at parse time.
    for (const auto& [key, value] : query.refs) {
      bool found = doc.families.count(value) || doc.maps.count(value) ||
                   doc.feedback_systems.count(value) || doc.subsets.count(value) ||
                   doc.universes.count(value);
      if (!found)
        throw SpecError("unresolved reference \"" + value + "\" in query " + query.id);
    }
    out.push_back(std::move(query));
  }
}

}  // namespace

SpecDocument parse_spec(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = position_of(text, e.byte ? e.byte - 1 : 0);
    throw SpecError("syntax error: " + std::string(e.what()), line, col);
  }
  if (!root.is_object()) throw SpecError("document must be a JSON object");
  SpecDocument doc;
  parse_universes(root, doc);
  parse_subsets(root, doc);
  parse_families(root, doc);
  parse_maps(root, doc);
  parse_feedback(root, doc);
  parse_queries(root, doc, doc.queries);
  return doc;
}

namespace {

const SetFamily& family_arg(const SpecDocument& doc, const Query& q, const std::string& key) {
  auto ref = q.refs.find(key);
  if (ref == q.refs.end()) throw SpecError("query " + q.id + " needs field \"" + key + "\"");
  auto it = doc.families.find(ref->second);
  if (it == doc.families.end())
    throw SpecError("query " + q.id + ": \"" + ref->second + "\" is not a family");
  return it->second;
}

const SetValuedMap& map_arg(const SpecDocument& doc, const Query& q, const std::string& key) {
  auto ref = q.refs.find(key);
  if (ref == q.refs.end()) throw SpecError("query " + q.id + " needs field \"" + key + "\"");
  auto it = doc.maps.find(ref->second);
  if (it == doc.maps.end())
    throw SpecError("query " + q.id + ": \"" + ref->second + "\" is not a map");
  return it->second;
}

const FeedbackSystem& system_arg(const SpecDocument& doc, const Query& q) {
  auto ref = q.refs.find("system");
  if (ref == q.refs.end()) throw SpecError("query " + q.id + " needs field \"system\"");
  auto it = doc.feedback_systems.find(ref->second);
  if (it == doc.feedback_systems.end())
    throw SpecError("query " + q.id + ": \"" + ref->second + "\" is not a feedback system");
  return it->second;
}

Verdict execute_query(const SpecDocument& doc, const Query& q, const Limits& limits) {
  if (q.type == "forward")
    return is_forward_stable(map_arg(doc, q, "map"), family_arg(doc, q, "a"),
                             family_arg(doc, q, "b"), limits);
  if (q.type == "backward")
    return is_backward_stable(map_arg(doc, q, "map"), family_arg(doc, q, "a"),
                              family_arg(doc, q, "b"), limits);
  if (q.type == "weak-forward")
    return is_weak_forward_stable(map_arg(doc, q, "map"), family_arg(doc, q, "a"),
                                  family_arg(doc, q, "b"), limits);
  if (q.type == "weak-backward")
    return is_weak_backward_stable(map_arg(doc, q, "map"), family_arg(doc, q, "a"),
                                   family_arg(doc, q, "b"), limits);
  if (q.type == "global")
    return is_globally_stable(map_arg(doc, q, "map"), family_arg(doc, q, "filter_d"),
                              family_arg(doc, q, "ideal_d"), family_arg(doc, q, "filter_y"),
                              family_arg(doc, q, "ideal_y"), limits);
  if (q.type == "compatible")
    return is_compatible(family_arg(doc, q, "filter"), family_arg(doc, q, "ideal"), limits);
  if (q.type == "construct-alpha") {
    AlphaResult r = construct_alpha(map_arg(doc, q, "map"), family_arg(doc, q, "filter_d"),
                                    family_arg(doc, q, "ideal_d"), family_arg(doc, q, "filter_y"),
                                    family_arg(doc, q, "ideal_y"), limits);
    return r.verdict;
  }
  if (q.type == "series-check")
    return series_check(map_arg(doc, q, "m1"), map_arg(doc, q, "m2"), family_arg(doc, q, "a1"),
                        family_arg(doc, q, "b1"), family_arg(doc, q, "a2"),
                        family_arg(doc, q, "b2"), q.direction, limits);
  if (q.type == "parallel-check")
    return parallel_check(map_arg(doc, q, "m1"), map_arg(doc, q, "m2"), family_arg(doc, q, "a1"),
                          family_arg(doc, q, "a2"), family_arg(doc, q, "b1"),
                          family_arg(doc, q, "b2"), q.direction, limits);
  if (q.type == "feedback-solve") {
    const FeedbackSystem& fb = system_arg(doc, q);
    SetValuedMap solution = feedback_solution_map(fb);
    Verdict v = Verdict::pass();
    for (std::size_t d = 0; d < fb.input_universe->size; ++d)
      v.with(fb.input_universe->label_of(d), solution.row(d));
    return v;
  }
  const FeedbackSystem& fb = system_arg(doc, q);
  if (q.type == "small-gain")
    return small_gain_check(fb, family_arg(doc, q, "a"), family_arg(doc, q, "b"), q.n_max,
                            q.direction, limits);
  if (q.type == "small-gain-theorem")
    return small_gain_theorem(fb, family_arg(doc, q, "a"), family_arg(doc, q, "b"), q.n_max,
                              q.direction, limits);
  throw SpecError("unknown query type " + q.type);
}

}  // namespace

Report run_queries(const SpecDocument& doc, const Limits& limits) {
  Report report;
  for (const auto& q : doc.queries) {
    ReportRecord rec;
    rec.id = q.id;
    rec.type = q.type;
    rec.expect = q.expect;
    auto started = std::chrono::steady_clock::now();
    try {
      Verdict v = execute_query(doc, q, limits);
      rec.holds = v.holds;
      rec.witness = v.witness;
      rec.notes = v.notes;
    } catch (const EnumerationRefused& e) {
      rec.error = e.what();
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    rec.time_us = std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    report.records.push_back(std::move(rec));
  }
  return report;
}

Report run_fixture_report(const Limits& limits) {
  Report report;
  for (const auto& suite : run_all_fixtures(limits)) {
    for (const auto& chk : suite.checks) {
      ReportRecord rec;
      rec.id = chk.id;
      rec.type = "fixture";
      rec.expect = chk.expected;
      rec.holds = chk.verdict.holds;
      rec.witness = chk.verdict.witness;
      rec.notes.push_back(suite.name + ": " + chk.description);
      for (const auto& n : chk.verdict.notes) rec.notes.push_back(n);
      report.records.push_back(std::move(rec));
    }
  }
  return report;
}

std::string emit_report(const Report& report, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::JsonLines) {
    for (const auto& rec : report.records) {
      json j;
      j["id"] = rec.id;
      j["type"] = rec.type;
      if (rec.holds)
        j["holds"] = *rec.holds;
      else
        j["holds"] = nullptr;
      if (!rec.error.empty()) j["error"] = rec.error;
      json witness = json::array();
      for (const auto& w : rec.witness) witness.push_back({{"name", w.name}, {"value", w.value}});
      j["witness"] = witness;
      j["notes"] = rec.notes;
      j["time_us"] = rec.time_us;
      if (rec.expect) j["expect"] = *rec.expect ? "holds" : "fails";
      out << j.dump() << "\n";
    }
    return out.str();
  }
  for (const auto& rec : report.records) {
    out << rec.id << " " << rec.type << " ";
    if (!rec.error.empty())
      out << "error: " << rec.error;
    else
      out << (*rec.holds ? "holds" : "fails");
    if (rec.expect) {
      bool ok = rec.error.empty() && rec.holds && *rec.holds == *rec.expect;
      out << (ok ? " [as expected]" : " [MISMATCH: expected ") ;
      if (!ok) out << (*rec.expect ? "holds]" : "fails]");
    }
    for (const auto& w : rec.witness) out << " | " << w.name << "=" << w.value;
    for (const auto& n : rec.notes) out << " ; " << n;
    out << "\n";
  }
  return out.str();
}

int report_exit_code(const Report& report) {
  for (const auto& rec : report.records) {
    if (!rec.expect) continue;
    if (!rec.error.empty() || !rec.holds || *rec.holds != *rec.expect) return 1;
  }
  return 0;
}

}  // namespace setstab
