#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "setstab/interconnect.hpp"
#include "setstab/modelgen.hpp"

namespace setstab {

// Parse failure with a position when the problem is syntactic.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(message), line(line), column(column) {}
  std::size_t line, column;
};

struct Query {
  std::string id;
  std::string type;
  std::map<std::string, std::string> refs;
  std::optional<bool> expect;
  std::size_t n_max = 0;  // 0 means the per-side default
  Direction direction = Direction::Backward;
};

// A fully resolved declaration document: named universes, subsets, families,
// maps and feedback systems, plus the queries to run against them.
struct SpecDocument {
  std::map<std::string, UniversePtr> universes;
  std::map<std::string, Subset> subsets;
  std::map<std::string, SetFamily> families;
  std::map<std::string, SetValuedMap> maps;
  std::map<std::string, FeedbackSystem> feedback_systems;
  std::vector<Query> queries;
};

SpecDocument parse_spec(const std::string& text);

struct ReportRecord {
  std::string id;
  std::string type;
  std::optional<bool> holds;  // empty when the query errored
  std::string error;
  std::vector<WitnessItem> witness;
  std::vector<std::string> notes;
  long long time_us = 0;
  std::optional<bool> expect;
};

struct Report {
  std::vector<ReportRecord> records;
};

// Executes the queries in declaration order. Per-query failures such as
// refused enumerations become error records, not aborts.
Report run_queries(const SpecDocument& doc, const Limits& limits = {});

// Built-in example systems and their expected verdicts as a report.
Report run_fixture_report(const Limits& limits = {});

enum class ReportFormat { Text, JsonLines };

// Deterministic bytes for a given report. The text format carries no timing;
// jsonlines carries time_us as informational data.
std::string emit_report(const Report& report, ReportFormat format);

// Zero iff every query carrying an expectation matched it.
int report_exit_code(const Report& report);

}  // namespace setstab
