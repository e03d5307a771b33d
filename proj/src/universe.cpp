#include "setstab/universe.hpp"

#include <stdexcept>

namespace setstab {

std::string Universe::label_of(std::size_t i) const {
  if (i >= size) throw std::out_of_range("element index out of range");
  if (labels) return (*labels)[i];
  return std::to_string(i);
}

std::optional<std::size_t> Universe::index_of_label(const std::string& label) const {
  if (labels) {
    for (std::size_t i = 0; i < size; ++i)
      if ((*labels)[i] == label) return i;
    return std::nullopt;
  }
  try {
    std::size_t pos = 0;
    unsigned long v = std::stoul(label, &pos);
    if (pos == label.size() && v < size) return static_cast<std::size_t>(v);
  } catch (...) {
  }
  return std::nullopt;
}

bool Universe::order_leq(std::size_t i, std::size_t j) const {
  if (!order) throw std::logic_error("universe has no order relation");
  return (*order)[i * size + j] != 0;
}

bool Universe::operator==(const Universe& other) const {
  return size == other.size && labels == other.labels && coordinates == other.coordinates &&
         magnitude == other.magnitude && order == other.order;
}

namespace {

void validate(const Universe& u) {
  if (u.size == 0) throw std::invalid_argument("universe must have at least one element");
  if (u.labels && u.labels->size() != u.size)
    throw std::invalid_argument("labels must cover every element");
  if (u.coordinates) {
    if (u.coordinates->size() != u.size)
      throw std::invalid_argument("coordinates must cover every element");
    std::size_t dim = (*u.coordinates)[0].size();
    for (const auto& p : *u.coordinates)
      if (p.size() != dim) throw std::invalid_argument("coordinate dimensions must agree");
  }
  if (u.magnitude) {
    if (u.magnitude->size() != u.size)
      throw std::invalid_argument("magnitudes must cover every element");
    for (const auto& m : *u.magnitude)
      if (m.is_negative()) throw std::invalid_argument("magnitudes must be nonnegative");
  }
  if (u.order) {
    const auto& o = *u.order;
    const std::size_t n = u.size;
    if (o.size() != n * n) throw std::invalid_argument("order matrix must be size*size");
    for (std::size_t i = 0; i < n; ++i)
      if (!o[i * n + i]) throw std::invalid_argument("order must be reflexive");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && o[i * n + j] && o[j * n + i])
          throw std::invalid_argument("order must be antisymmetric");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (o[i * n + j] && o[j * n + k] && !o[i * n + k])
            throw std::invalid_argument("order must be transitive");
  }
}

}  // namespace

UniversePtr make_universe(Universe u) {
  validate(u);
  return std::make_shared<const Universe>(std::move(u));
}

UniversePtr make_universe(std::size_t size) {
  Universe u;
  u.size = size;
  return make_universe(std::move(u));
}

UniversePtr make_universe(std::vector<std::string> labels) {
  Universe u;
  u.size = labels.size();
  u.labels = std::move(labels);
  return make_universe(std::move(u));
}

UniversePtr grid_universe(const Rational& start, const Rational& step, std::size_t count) {
  Universe u;
  u.size = count;
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> coords;
  std::vector<Rational> mags;
  Rational v = start;
  for (std::size_t i = 0; i < count; ++i) {
    labels.push_back(v.str());
    coords.push_back({v});
    mags.push_back(abs(v));
    v = v + step;
  }
  u.labels = std::move(labels);
  u.coordinates = std::move(coords);
  u.magnitude = std::move(mags);
  return make_universe(std::move(u));
}

bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  if (!a || !b) return false;
  return a.get() == b.get() || *a == *b;
}

UniversePtr pair_encode(const UniversePtr& u1, const UniversePtr& u2) {
  const std::size_t n1 = u1->size, n2 = u2->size;
  Universe p;
  p.size = n1 * n2;
  {
    std::vector<std::string> labels;
    labels.reserve(p.size);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j)
        labels.push_back("(" + u1->label_of(i) + "," + u2->label_of(j) + ")");
    p.labels = std::move(labels);
  }
  if (u1->coordinates && u2->coordinates) {
    std::vector<std::vector<Rational>> coords;
    coords.reserve(p.size);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j) {
        std::vector<Rational> c = (*u1->coordinates)[i];
        const auto& d = (*u2->coordinates)[j];
        c.insert(c.end(), d.begin(), d.end());
        coords.push_back(std::move(c));
      }
    p.coordinates = std::move(coords);
  }
  if (u1->magnitude && u2->magnitude) {
    std::vector<Rational> mags;
    mags.reserve(p.size);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j) {
        const Rational& a = (*u1->magnitude)[i];
        const Rational& b = (*u2->magnitude)[j];
        mags.push_back(a < b ? b : a);
      }
    p.magnitude = std::move(mags);
  }
  if (u1->order && u2->order) {
    std::vector<std::uint8_t> ord(p.size * p.size, 0);
    for (std::size_t i1 = 0; i1 < n1; ++i1)
      for (std::size_t j1 = 0; j1 < n2; ++j1)
        for (std::size_t i2 = 0; i2 < n1; ++i2)
          for (std::size_t j2 = 0; j2 < n2; ++j2) {
            bool le = u1->order_leq(i1, i2) && u2->order_leq(j1, j2);
            ord[pair_index(i1, j1, n2) * p.size + pair_index(i2, j2, n2)] = le ? 1 : 0;
          }
    p.order = std::move(ord);
  }
  return make_universe(std::move(p));
}

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t size2) {
  if (j >= size2) throw std::out_of_range("pair index out of range");
  return i * size2 + j;
}

std::pair<std::size_t, std::size_t> pair_split(std::size_t element, std::size_t size2) {
  if (size2 == 0) throw std::out_of_range("pair split over empty factor");
  return {element / size2, element % size2};
}

}  // namespace setstab
