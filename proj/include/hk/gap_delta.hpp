#pragma once

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hk/dynamics.hpp"
#include "hk/rational.hpp"

namespace hk {

// Machinery for the two-weights-joined-by-a-chain family: consecutive-gap
// vectors, their linear one-step update, and the scaled deviations that the
// quadratic freezing-time argument tracks.

template <class S>
struct GapVector {
  int n = 0;
  long long t = 0;
  std::vector<S> y;  // n + 2 entries, index 0..n+1
};

template <class S>
struct DeltaVector {
  int n = 0;
  long long t = 0;
  std::vector<S> delta;  // n + 2 entries, index 0..n+1
};

// One-step update y_{t+1} = M y_t, valid while the receptivity graph still
// equals the initial one. Stored dense, exact, 0-based.
struct GapUpdateMatrix {
  int n = 0;
  std::vector<Rat> m;  // (n+2) x (n+2), row-major
  const Rat& at(int i, int j) const { return m[static_cast<size_t>(i) * (n + 2) + j]; }
  Rat& at(int i, int j) { return m[static_cast<size_t>(i) * (n + 2) + j]; }
};

// Top two rows come from averaging against the weight clusters, middle rows
// are the plain three-point mean, and the bottom two rows mirror the top.
inline GapUpdateMatrix build_update_matrix(int n) {
  if (n < 3) throw std::invalid_argument("gap update matrix needs n >= 3");
  GapUpdateMatrix M;
  M.n = n;
  const int size = n + 2;
  M.m.assign(static_cast<size_t>(size) * size, Rat(0));
  M.at(0, 0) = rat(n, static_cast<long>(n + 1) * (n + 2));
  M.at(0, 1) = rat(1, n + 2);
  M.at(1, 0) = rat(n, n + 2);
  M.at(1, 1) = rat(2 * n + 1, 3 * (n + 2));
  M.at(1, 2) = rat(1, 3);
  for (int i = 2; i < n; ++i)
    for (int j = i - 1; j <= i + 1; ++j) M.at(i, j) = rat(1, 3);
  for (int i = n; i < size; ++i)
    for (int j = 0; j < size; ++j) M.at(i, j) = M.at(size - 1 - i, size - 1 - j);
  return M;
}

template <class S>
std::vector<S> apply_update(const GapUpdateMatrix& M, const std::vector<S>& y) {
  const int size = M.n + 2;
  if (static_cast<int>(y.size()) != size) throw std::invalid_argument("gap vector size mismatch");
  std::vector<S> out(size, numeric_traits<S>::from_long(0));
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      const Rat& mij = M.at(i, j);
      if (mij == 0) continue;
      if constexpr (numeric_traits<S>::exact) {
        out[i] += mij * y[j];
      } else {
        out[i] += mij.get_d() * y[j];
      }
    }
  return out;
}

// The n+2 consecutive gaps of a chain state: weight-to-chain, the n chain
// gaps, chain-to-weight. Requires both weight clusters to be internally
// coincident, i.e. the state has not split past the two-cluster phase.
template <class S>
GapVector<S> gaps_from_state(const Config<S>& c, int n, long long t = 0) {
  if (c.dim != 1 || c.agents() != 3 * n + 1)
    throw std::domain_error("expected a 1D chain state with 3n+1 agents");
  for (int i = 0; i + 1 < n; ++i)
    if (!coincide(c, i, i + 1)) throw std::domain_error("left weight cluster not coincident");
  for (int i = 2 * n + 1; i + 1 <= 3 * n; ++i)
    if (!coincide(c, i, i + 1)) throw std::domain_error("right weight cluster not coincident");
  GapVector<S> g;
  g.n = n;
  g.t = t;
  g.y.reserve(n + 2);
  for (int i = 0; i <= n + 1; ++i) g.y.push_back(c.at(n + i) - c.at(n + i - 1));
  return g;
}

// delta[i] measures the shortfall below the initial gap, scaled by n^2:
// end gaps start at 1/n, chain gaps at 1.
template <class S>
DeltaVector<S> delta_from_gaps(const GapVector<S>& g) {
  using T = numeric_traits<S>;
  DeltaVector<S> d;
  d.n = g.n;
  d.t = g.t;
  const S n2 = T::from_long(static_cast<long>(g.n) * g.n);
  for (int i = 0; i <= g.n + 1; ++i) {
    S base = (i == 0 || i == g.n + 1) ? T::from_ratio(1, g.n) : T::from_long(1);
    d.delta.push_back(n2 * (base - g.y[i]));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Phase invariants
// ---------------------------------------------------------------------------

struct PhaseReport {
  int n = 0;
  long long states = 0;          // trajectory states inspected
  long long t_star = -1;         // first receptivity change, -1 if none seen
  long long identity_steps = 0;  // update steps verified against the matrix
  bool identity_ok = true;       // y_{t+1} = M y_t exactly
  bool recursion_ok = true;      // per-step delta relations
  bool symmetry_ok = true;       // delta[i] = delta[n+1-i]
  bool nonneg_ok = true;         // delta >= 0 within the phase
  bool band_ok = true;           // delta[0] in [1/2, 2] for 1 <= t <= n^2/8
  bool interior_ok = true;       // delta[i] < n-2 for t <= n^2/8
  bool change_matches = false;   // the first change is the weight/chain edge pair
  bool disconnect_after = false; // gap y[2] exceeds the bound right after t*
  std::vector<std::string> notes;

  bool phase_ok() const {
    return identity_ok && recursion_ok && symmetry_ok && nonneg_ok && band_ok && interior_ok;
  }
  bool ok() const { return phase_ok() && t_star >= 0 && change_matches && disconnect_after; }
};

namespace detail {

// Receptivity fingerprint the first change is expected to produce: both
// weight clusters reach one chain agent further in, nothing else moves.
inline std::vector<int> expected_change_profile(int n, std::vector<int> profile0) {
  for (int i = 0; i < n; ++i) profile0[i] = n + 1;
  profile0[2 * n - 1] = 3 * n;
  return profile0;
}

}  // namespace detail

// Exact audit of one chain trajectory: while the receptivity graph equals the
// initial one, the gap vector must follow the linear update exactly and the
// deltas must obey the per-step relations, symmetry, sign, and (inside the
// t <= n^2/8 window) the value bands. Also classifies the first topology
// change. A short trajectory yields a partial report, not an error.
inline PhaseReport check_phase_invariants(const std::vector<Config<Rat>>& traj, int n) {
  if (traj.empty()) throw std::invalid_argument("empty trajectory");
  PhaseReport rep;
  rep.n = n;
  rep.states = static_cast<long long>(traj.size());
  auto note = [&](long long t, const std::string& what) {
    rep.notes.push_back("t=" + std::to_string(t) + ": " + what);
  };

  const std::vector<int> profile0 = reach_profile(traj[0]);
  for (long long t = 1; t < rep.states; ++t) {
    if (reach_profile(traj[t]) != profile0) {
      rep.t_star = t;
      break;
    }
  }
  // G_t = G_0 for t <= last_phase; the step out of last_phase still uses G_0
  const long long last_phase = rep.t_star >= 0 ? rep.t_star - 1 : rep.states - 1;

  const GapUpdateMatrix M = build_update_matrix(n);
  std::vector<GapVector<Rat>> y;
  std::vector<DeltaVector<Rat>> d;
  const long long gaps_until = std::min(last_phase + 1, rep.states - 1);
  for (long long t = 0; t <= gaps_until; ++t) {
    y.push_back(gaps_from_state(traj[static_cast<size_t>(t)], n, t));
    d.push_back(delta_from_gaps(y.back()));
  }

  const Rat half = rat(1, 2);
  const Rat two = 2;
  const Rat third = rat(1, 3);
  const Rat interior_cap = n - 2;
  const long long window = static_cast<long long>(n) * n / 8;

  for (long long t = 0; t <= last_phase; ++t) {
    const auto& dt = d[static_cast<size_t>(t)].delta;
    for (int i = 0; i <= n + 1 && rep.symmetry_ok; ++i)
      if (dt[i] != dt[n + 1 - i]) {
        rep.symmetry_ok = false;
        note(t, "delta[" + std::to_string(i) + "] != mirror");
      }
    for (int i = 0; i <= n + 1 && rep.nonneg_ok; ++i)
      if (dt[i] < 0) {
        rep.nonneg_ok = false;
        note(t, "delta[" + std::to_string(i) + "] negative");
      }
    if (t >= 1 && t <= window) {
      if (rep.band_ok && (dt[0] < half || dt[0] > two)) {
        rep.band_ok = false;
        note(t, "delta[0] outside [1/2, 2]");
      }
      for (int i = 0; i <= n + 1 && rep.interior_ok; ++i)
        if (dt[i] >= interior_cap) {
          rep.interior_ok = false;
          note(t, "delta[" + std::to_string(i) + "] >= n-2");
        }
    }

    if (t + 1 > gaps_until) continue;
    const auto& yt = y[static_cast<size_t>(t)].y;
    const auto& yn = y[static_cast<size_t>(t + 1)].y;
    if (rep.identity_ok) {
      if (apply_update(M, yt) != yn) {
        rep.identity_ok = false;
        note(t + 1, "gap vector differs from matrix update");
      } else {
        ++rep.identity_steps;
      }
    }
    if (rep.recursion_ok) {
      const auto& dn = d[static_cast<size_t>(t + 1)].delta;
      bool ok = dn[0] >= 0 && dn[0] <= 1 + (dt[0] + dt[1]) / n;
      ok = ok && dn[1] <= dt[0] + Rat(2) * third * dt[1] + third * dt[2];
      for (int i = 2; i <= n - 1 && ok; ++i)
        ok = dn[i] == third * (dt[i - 1] + dt[i] + dt[i + 1]);
      if (!ok) {
        rep.recursion_ok = false;
        note(t + 1, "delta recursion violated");
      }
    }
  }

  if (rep.t_star >= 0) {
    rep.change_matches =
        reach_profile(traj[static_cast<size_t>(rep.t_star)]) ==
        detail::expected_change_profile(n, profile0);
    if (!rep.change_matches) note(rep.t_star, "first topology change has unexpected shape");
    if (rep.t_star + 1 < rep.states) {
      auto after = gaps_from_state(traj[static_cast<size_t>(rep.t_star + 1)], n, rep.t_star + 1);
      rep.disconnect_after = after.y[2] > 1 && after.y[n - 1] > 1;
      if (!rep.disconnect_after) note(rep.t_star + 1, "chain gap y[2] did not exceed the bound");
    } else {
      note(rep.t_star, "trajectory ends at t*; disconnect not observable");
    }
  } else {
    note(rep.states - 1, "no topology change within trajectory");
  }
  return rep;
}

inline std::string format_phase_report(const PhaseReport& r) {
  std::ostringstream out;
  auto line = [&](const std::string& k, const std::string& v) { out << "  " << k << ": " << v << '\n'; };
  auto flag = [](bool b) { return b ? std::string("ok") : std::string("VIOLATED"); };
  out << "phase report (n=" << r.n << ", states=" << r.states << ")\n";
  line("first topology change t*", r.t_star >= 0 ? std::to_string(r.t_star) : "not reached");
  line("matrix identity", flag(r.identity_ok) + " (" + std::to_string(r.identity_steps) + " steps)");
  line("delta recursion", flag(r.recursion_ok));
  line("delta symmetry", flag(r.symmetry_ok));
  line("delta nonnegative", flag(r.nonneg_ok));
  line("delta[0] band [1/2,2] (t <= n^2/8)", flag(r.band_ok));
  line("delta < n-2 (t <= n^2/8)", flag(r.interior_ok));
  line("change is weight/chain edge pair", r.change_matches ? "yes" : "no");
  line("chain disconnect right after t*", r.disconnect_after ? "yes" : "no");
  for (const auto& s : r.notes) out << "  note " << s << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Exploratory series
// ---------------------------------------------------------------------------

struct GrowthPoint {
  long long t = 0;
  double delta1 = 0;
  double ratio = 0;  // delta1 / sqrt(t)
};

// delta[1] against sqrt(t), for eyeballing the growth rate. Works on exact or
// float trajectories; stops at the first state past the two-cluster phase.
template <class S>
std::vector<GrowthPoint> exploratory_growth(const std::vector<Config<S>>& traj, int n) {
  std::vector<GrowthPoint> out;
  for (long long t = 1; t < static_cast<long long>(traj.size()); ++t) {
    GapVector<S> g;
    try {
      g = gaps_from_state(traj[static_cast<size_t>(t)], n, t);
    } catch (const std::domain_error&) {
      break;
    }
    DeltaVector<S> d = delta_from_gaps(g);
    GrowthPoint p;
    p.t = t;
    p.delta1 = numeric_traits<S>::to_double(d.delta[1]);
    p.ratio = p.delta1 / std::sqrt(static_cast<double>(t));
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

template <class S>
void write_gap_csv(std::ostream& out, const std::vector<GapVector<S>>& ys) {
  out << "t,i,y,delta\n";
  for (const auto& g : ys) {
    DeltaVector<S> d = delta_from_gaps(g);
    for (int i = 0; i <= g.n + 1; ++i)
      out << g.t << ',' << i << ',' << numeric_traits<S>::to_string(g.y[i]) << ','
          << numeric_traits<S>::to_string(d.delta[i]) << '\n';
  }
}

inline void write_growth_csv(std::ostream& out, const std::vector<GrowthPoint>& pts) {
  out << "t,delta1,ratio\n";
  for (const auto& p : pts)
    out << p.t << ',' << format_double(p.delta1) << ',' << format_double(p.ratio) << '\n';
}

}  // namespace hk
