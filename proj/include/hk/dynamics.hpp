#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hk/configuration.hpp"

namespace hk {

// ---------------------------------------------------------------------------
// Neighbourhoods
// ---------------------------------------------------------------------------

// Inclusive index windows [lo[i], hi[i]] of the agents within reach of i, for
// sorted 1D configurations. Both endpoints advance monotonically, so one pass
// costs O(n) regardless of window sizes.
template <class S>
void reach_windows(const Config<S>& c, std::vector<int>& lo, std::vector<int>& hi) {
  const int n = c.agents();
  lo.assign(n, 0);
  hi.assign(n, 0);
  const S limit = detail::reach_limit(c);
  int l = 0, h = 0;
  for (int i = 0; i < n; ++i) {
    if (h < i) h = i;
    while (c.at(i) - c.at(l) > limit) ++l;
    while (h + 1 < n && c.at(h + 1) - c.at(i) <= limit) ++h;
    lo[i] = l;
    hi[i] = h;
  }
}

// All agents within the confidence bound of i, including i itself.
template <class S>
std::vector<int> neighbours(const Config<S>& c, int i) {
  if (i < 0 || i >= c.agents()) throw std::out_of_range("agent index out of range");
  std::vector<int> out;
  for (int j = 0; j < c.agents(); ++j)
    if (within_reach(c, i, j)) out.push_back(j);
  return out;
}

// ---------------------------------------------------------------------------
// Synchronous update
// ---------------------------------------------------------------------------

// One synchronous step: every agent moves to the coordinatewise mean of the
// opinions within its confidence bound (its own included). The next state is
// fully assembled before it replaces the current one.
template <class S>
Config<S> step(const Config<S>& c) {
  Config<S> out = c;
  const int n = c.agents();
  if (n == 0) return out;

  if (c.dim == 1) {
    std::vector<int> lo, hi;
    reach_windows(c, lo, hi);
    std::vector<S> prefix(n + 1, numeric_traits<S>::from_long(0));
    for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + c.at(i);
    for (int i = 0; i < n; ++i) {
      S sum = prefix[hi[i] + 1] - prefix[lo[i]];
      out.x[i] = sum / numeric_traits<S>::from_long(hi[i] - lo[i] + 1);
    }
    if constexpr (numeric_traits<S>::exact) {
      if (!out.sorted()) throw std::logic_error("1D order not preserved by update");
    } else {
      if (!out.sorted()) out.sort_1d();  // repair float rounding ties
    }
    return out;
  }

  std::vector<S> sum(c.dim, numeric_traits<S>::from_long(0));
  for (int i = 0; i < n; ++i) {
    for (int d = 0; d < c.dim; ++d) sum[d] = numeric_traits<S>::from_long(0);
    long count = 0;
    for (int j = 0; j < n; ++j) {
      if (!within_reach(c, i, j)) continue;
      ++count;
      for (int d = 0; d < c.dim; ++d) sum[d] += c.at(j, d);
    }
    for (int d = 0; d < c.dim; ++d)
      out.at(i, d) = sum[d] / numeric_traits<S>::from_long(count);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clusters and freezing
// ---------------------------------------------------------------------------

template <class S>
struct Cluster {
  std::vector<S> position;   // dim coordinates, taken from the first member
  std::vector<int> members;  // ascending agent indices
  int size() const { return static_cast<int>(members.size()); }
};

// Maximal groups of agents holding the same opinion. 1D merges by chaining
// consecutive coincidences along the sorted order; higher dimensions merge by
// union-find over all coinciding pairs, so the result is order-independent.
template <class S>
std::vector<Cluster<S>> clusters(const Config<S>& c) {
  const int n = c.agents();
  std::vector<Cluster<S>> out;
  if (n == 0) return out;

  if (c.dim == 1) {
    int start = 0;
    for (int i = 1; i <= n; ++i) {
      if (i == n || !coincide(c, i - 1, i)) {
        Cluster<S> cl;
        cl.position.assign(c.point(start).begin(), c.point(start).end());
        for (int j = start; j < i; ++j) cl.members.push_back(j);
        out.push_back(std::move(cl));
        start = i;
      }
    }
    return out;
  }

  std::vector<int> root(n);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coincide(c, i, j)) root[find(i)] = find(j);
  std::vector<int> first(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (first[r] < 0) {
      first[r] = static_cast<int>(out.size());
      Cluster<S> cl;
      cl.position.assign(c.point(i).begin(), c.point(i).end());
      out.push_back(std::move(cl));
    }
    out[first[r]].members.push_back(i);
  }
  return out;
}

// Frozen: distinct opinions are all separated by more than the bound, so the
// next update moves nobody.
template <class S>
bool is_frozen(const Config<S>& c) {
  auto cl = clusters(c);
  const int m = static_cast<int>(cl.size());
  if (c.dim == 1) {
    for (int k = 0; k + 1 < m; ++k) {
      S gap = cl[k + 1].position[0] - cl[k].position[0];
      if (gap <= detail::reach_limit(c)) return false;
    }
    return true;
  }
  const S limit = detail::reach_limit(c);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      S d2 = numeric_traits<S>::from_long(0);
      for (int d = 0; d < c.dim; ++d) {
        S diff = cl[a].position[d] - cl[b].position[d];
        d2 += diff * diff;
      }
      if (d2 <= limit * limit) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Receptivity graph
// ---------------------------------------------------------------------------

struct ReceptivityGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;       // i < j, lexicographic
  std::vector<std::vector<int>> components;     // ascending members, by first agent
  std::vector<std::pair<int, int>> intervals;   // dim == 1: inclusive index ranges
};

template <class S>
ReceptivityGraph receptivity(const Config<S>& c) {
  ReceptivityGraph g;
  const int n = g.n = c.agents();
  if (n == 0) return g;

  if (c.dim == 1) {
    std::vector<int> lo, hi;
    reach_windows(c, lo, hi);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j <= hi[i]; ++j) g.edges.emplace_back(i, j);
    // consecutive agents split a component exactly when their gap exceeds the
    // bound, so components are index intervals
    int start = 0;
    for (int i = 0; i + 1 <= n; ++i) {
      bool cut = (i + 1 == n) || hi[i] < i + 1;
      if (cut) {
        g.intervals.emplace_back(start, i);
        std::vector<int> comp(i - start + 1);
        std::iota(comp.begin(), comp.end(), start);
        g.components.push_back(std::move(comp));
        start = i + 1;
      }
    }
    return g;
  }

  std::vector<int> root(n);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (within_reach(c, i, j)) {
        g.edges.emplace_back(i, j);
        root[find(i)] = find(j);
      }
  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(g.components.size());
      g.components.emplace_back();
    }
    g.components[slot[r]].push_back(i);
  }
  return g;
}

// Compact fingerprint of the receptivity edge set. For sorted 1D states the
// per-agent upper window endpoint determines every edge; otherwise the edge
// list itself is used.
template <class S>
std::vector<int> reach_profile(const Config<S>& c) {
  if (c.dim == 1) {
    std::vector<int> lo, hi;
    reach_windows(c, lo, hi);
    return hi;
  }
  std::vector<int> flat;
  const int n = c.agents();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (within_reach(c, i, j)) flat.push_back(i * n + j);
  return flat;
}

template <class S>
long long profile_edge_count(const Config<S>& c, const std::vector<int>& profile) {
  if (c.dim == 1) {
    long long e = 0;
    for (int i = 0; i < static_cast<int>(profile.size()); ++i) e += profile[i] - i;
    return e;
  }
  return static_cast<long long>(profile.size());
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

struct Event {
  long long t = 0;
  std::string description;
};

template <class S>
struct SimulationResult {
  bool frozen = false;
  long long steps = 0;
  long long freeze_time = -1;  // valid when frozen
  Config<S> final_state;
  std::vector<Event> events;        // every t where the receptivity edge set changed
  std::vector<Config<S>> trajectory;  // states 0..steps when recording
};

// Iterate the update until the state freezes or max_steps is reached. Running
// out of steps is reported through `frozen == false`, never as an error.
template <class S>
SimulationResult<S> simulate(const Config<S>& start, long long max_steps, bool record = false) {
  if (max_steps < 0) throw std::invalid_argument("max_steps must be nonnegative");
  SimulationResult<S> res;
  Config<S> cur = start;
  if (record) res.trajectory.push_back(cur);

  std::vector<int> profile = reach_profile(cur);
  long long edges = profile_edge_count(cur, profile);
  for (long long t = 0;; ++t) {
    if (t > 0) {
      std::vector<int> next_profile = reach_profile(cur);
      if (next_profile != profile) {
        long long next_edges = profile_edge_count(cur, next_profile);
        res.events.push_back(
            {t, "receptivity edges " + std::to_string(edges) + " -> " + std::to_string(next_edges)});
        profile = std::move(next_profile);
        edges = next_edges;
      }
    }
    if (is_frozen(cur)) {
      res.frozen = true;
      res.freeze_time = t;
      res.steps = t;
      break;
    }
    if (t == max_steps) {
      res.steps = t;
      break;
    }
    cur = step(cur);
    if (record) res.trajectory.push_back(cur);
  }
  res.final_state = std::move(cur);
  return res;
}

}  // namespace hk
