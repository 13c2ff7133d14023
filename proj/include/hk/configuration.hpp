#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "hk/numeric.hpp"

namespace hk {

// Opinion state: n agents in dim-dimensional opinion space with a common
// confidence bound. For dim == 1 the opinion list is kept nondecreasing, so
// agent indices follow the spatial order.
template <class S>
struct Config {
  int dim = 1;
  S bound = numeric_traits<S>::from_long(1);
  Tolerances tol{};
  std::vector<S> x;  // n * dim, row-major

  Config() = default;
  explicit Config(int d) : dim(d) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
  }

  int agents() const { return dim > 0 ? static_cast<int>(x.size()) / dim : 0; }

  std::span<const S> point(int i) const {
    return {x.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
  }

  const S& at(int i, int d = 0) const { return x[static_cast<std::size_t>(i) * dim + d]; }
  S& at(int i, int d = 0) { return x[static_cast<std::size_t>(i) * dim + d]; }

  void append(std::initializer_list<S> coords) {
    if (static_cast<int>(coords.size()) != dim)
      throw std::invalid_argument("point dimension mismatch");
    x.insert(x.end(), coords.begin(), coords.end());
  }

  bool sorted() const { return dim != 1 || std::is_sorted(x.begin(), x.end()); }

  void sort_1d() {
    if (dim == 1) std::sort(x.begin(), x.end());
  }
};

namespace detail {

// Distance-vs-threshold comparison shared by neighbourhoods, freezing and
// cluster tests. In exact mode thresholds are used as-is; in float mode the
// caller bakes the tolerance into `limit`. Multi-dimensional comparisons are
// done on squared values so exact mode never needs square roots.
template <class S>
bool points_within(const Config<S>& c, int i, int j, const S& limit) {
  if (c.dim == 1) {
    S d = c.at(i) - c.at(j);
    if (d < 0) d = -d;
    return d <= limit;
  }
  S d2 = numeric_traits<S>::from_long(0);
  for (int d = 0; d < c.dim; ++d) {
    S diff = c.at(i, d) - c.at(j, d);
    d2 += diff * diff;
  }
  return d2 <= limit * limit;
}

template <class S>
S reach_limit(const Config<S>& c) {
  if constexpr (numeric_traits<S>::exact)
    return c.bound;
  else
    return c.bound + c.tol.eps_edge;
}

template <class S>
S coincide_limit(const Config<S>& c) {
  if constexpr (numeric_traits<S>::exact)
    return numeric_traits<S>::from_long(0);
  else
    return c.tol.eps_equal;
}

}  // namespace detail

// True when i and j are within each other's confidence bound.
template <class S>
bool within_reach(const Config<S>& c, int i, int j) {
  return detail::points_within(c, i, j, detail::reach_limit(c));
}

// True when i and j hold the same opinion (exactly, or within eps_equal).
template <class S>
bool coincide(const Config<S>& c, int i, int j) {
  return detail::points_within(c, i, j, detail::coincide_limit(c));
}

}  // namespace hk
