#include "setstab/subset.hpp"

#include <bit>
#include <stdexcept>

namespace setstab {

namespace {
std::size_t block_count(std::size_t n) { return (n + 63) / 64; }
}  // namespace

Subset::Subset(UniversePtr universe)
    : universe_(std::move(universe)), bits_(block_count(universe_->size), 0) {}

Subset Subset::empty(UniversePtr universe) { return Subset(std::move(universe)); }

Subset Subset::full(UniversePtr universe) {
  Subset s(std::move(universe));
  const std::size_t n = s.size();
  for (std::size_t b = 0; b < s.bits_.size(); ++b) s.bits_[b] = ~0ull;
  const std::size_t tail = n % 64;
  if (tail) s.bits_.back() &= (1ull << tail) - 1;
  return s;
}

Subset Subset::of(UniversePtr universe, const std::vector<std::size_t>& members) {
  Subset s(std::move(universe));
  for (std::size_t m : members) s.set(m);
  return s;
}

Subset Subset::singleton(UniversePtr universe, std::size_t element) {
  Subset s(std::move(universe));
  s.set(element);
  return s;
}

bool Subset::test(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("element index out of range");
  return (bits_[i / 64] >> (i % 64)) & 1;
}

void Subset::set(std::size_t i, bool value) {
  if (i >= size()) throw std::out_of_range("element index out of range");
  if (value)
    bits_[i / 64] |= 1ull << (i % 64);
  else
    bits_[i / 64] &= ~(1ull << (i % 64));
}

std::size_t Subset::count() const {
  std::size_t c = 0;
  for (std::uint64_t b : bits_) c += static_cast<std::size_t>(std::popcount(b));
  return c;
}

bool Subset::none() const {
  for (std::uint64_t b : bits_)
    if (b) return false;
  return true;
}

void Subset::check_compatible(const Subset& other) const {
  if (!same_universe(universe_, other.universe_))
    throw std::invalid_argument("subsets over different universes");
}

bool Subset::subset_of(const Subset& other) const {
  check_compatible(other);
  for (std::size_t b = 0; b < bits_.size(); ++b)
    if (bits_[b] & ~other.bits_[b]) return false;
  return true;
}

bool Subset::intersects(const Subset& other) const {
  check_compatible(other);
  for (std::size_t b = 0; b < bits_.size(); ++b)
    if (bits_[b] & other.bits_[b]) return true;
  return false;
}

Subset Subset::operator&(const Subset& other) const {
  check_compatible(other);
  Subset r(universe_);
  for (std::size_t b = 0; b < bits_.size(); ++b) r.bits_[b] = bits_[b] & other.bits_[b];
  return r;
}

Subset Subset::operator|(const Subset& other) const {
  check_compatible(other);
  Subset r(universe_);
  for (std::size_t b = 0; b < bits_.size(); ++b) r.bits_[b] = bits_[b] | other.bits_[b];
  return r;
}

bool Subset::operator==(const Subset& other) const {
  if (!same_universe(universe_, other.universe_)) return false;
  return bits_ == other.bits_;
}

std::vector<std::size_t> Subset::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (test(i)) out.push_back(i);
  return out;
}

std::string Subset::str() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : members()) {
    if (!first) out += ",";
    out += universe_->label_of(i);
    first = false;
  }
  out += "}";
  return out;
}

Subset complement(const Subset& s) {
  Subset r(s.universe());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!s.test(i)) r.set(i);
  return r;
}

bool lexicographic_less(const Subset& a, const Subset& b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool ai = a.test(i), bi = b.test(i);
    if (ai != bi) return !ai;
  }
  return false;
}

bool canonical_less(const Subset& a, const Subset& b) {
  std::size_t ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  return lexicographic_less(a, b);
}

Subset subset_from_mask(const UniversePtr& universe, std::uint64_t mask) {
  if (universe->size > 64) throw std::invalid_argument("mask form needs size <= 64");
  Subset s(universe);
  for (std::size_t i = 0; i < universe->size; ++i)
    if ((mask >> i) & 1) s.set(i);
  return s;
}

}  // namespace setstab
