#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "setstab/subset.hpp"

namespace setstab {

// Work limit for operations that must enumerate a family extension or a
// trajectory space. Exceeding a ceiling raises EnumerationRefused instead of
// approximating.
struct Limits {
  std::size_t enum_ceiling = std::size_t{1} << 16;
  std::size_t trajectory_ceiling = 10000;
};

class EnumerationRefused : public std::runtime_error {
 public:
  explicit EnumerationRefused(const std::string& what) : std::runtime_error(what) {}
};

struct WitnessItem {
  std::string name;
  std::string value;
  std::optional<Subset> set;
};

// Boolean outcome plus the data that certifies or refutes it.
struct Verdict {
  bool holds = false;
  std::vector<WitnessItem> witness;
  std::vector<std::string> notes;

  explicit operator bool() const { return holds; }

  static Verdict pass() { return Verdict{true, {}, {}}; }
  static Verdict fail() { return Verdict{false, {}, {}}; }

  Verdict& with(const std::string& name, const Subset& s) {
    witness.push_back(WitnessItem{name, s.str(), s});
    return *this;
  }
  Verdict& with(const std::string& name, const std::string& value) {
    witness.push_back(WitnessItem{name, value, std::nullopt});
    return *this;
  }
  Verdict& note(const std::string& n) {
    notes.push_back(n);
    return *this;
  }

  // Conjunction that keeps both sides' diagnostics, prefixed.
  static Verdict both(const std::string& left_tag, const Verdict& left,
                      const std::string& right_tag, const Verdict& right) {
    Verdict v;
    v.holds = left.holds && right.holds;
    for (const auto& w : left.witness) v.witness.push_back({left_tag + " " + w.name, w.value, w.set});
    for (const auto& w : right.witness)
      v.witness.push_back({right_tag + " " + w.name, w.value, w.set});
    for (const auto& n : left.notes) v.notes.push_back(left_tag + ": " + n);
    for (const auto& n : right.notes) v.notes.push_back(right_tag + ": " + n);
    return v;
  }
};

}  // namespace setstab
