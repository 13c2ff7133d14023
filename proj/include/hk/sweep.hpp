#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hk/dynamics.hpp"
#include "hk/families.hpp"

namespace hk {

enum class ModeKind { Exact, Float };

inline const char* mode_name(ModeKind m) { return m == ModeKind::Exact ? "exact" : "float"; }

inline ModeKind mode_from_name(const std::string& s) {
  if (s == "exact") return ModeKind::Exact;
  if (s == "float") return ModeKind::Float;
  throw std::invalid_argument("unknown mode: " + s);
}

// Exact arithmetic is the default where it is cheap; large one-dimensional
// runs fall back to float, and the polygon only exists there.
inline ModeKind default_mode(Family f, int n) {
  if (f == Family::Polygon) return ModeKind::Float;
  return n <= 32 ? ModeKind::Exact : ModeKind::Float;
}

// Run caps: cubic in the agent count on the line (the known worst case is
// cubic), quadratic for the planar families.
inline long long default_max_steps(Family f, int n) {
  if (f == Family::Polygon || f == Family::ReconnectionTriple) {
    long long nn = std::max(n, 3);
    return 10 * nn * nn;
  }
  long long agents = n;
  if (f == Family::DumbbellChain) agents = 3LL * n + 1;
  if (f == Family::Kurz) agents = 2LL * n + 2;
  long long cap = 10 * agents * agents * agents;
  return std::min(cap, 1000000000LL);
}

struct SweepRow {
  std::string family;
  int n = 0;
  int agents = 0;
  std::string mode;
  long long freeze_time = -1;  // -1 when the run hit the step cap
  long long steps_run = 0;
  bool frozen = false;
  double wall_time_ms = 0;
};

template <class S>
SweepRow sweep_one(Family f, int n, long long max_steps) {
  Config<S> c = make_family<S>(f, n);
  const auto start = std::chrono::steady_clock::now();
  SimulationResult<S> res = simulate(c, max_steps);
  const auto stop = std::chrono::steady_clock::now();
  SweepRow row;
  row.family = family_name(f);
  row.n = n;
  row.agents = c.agents();
  row.mode = numeric_traits<S>::exact ? "exact" : "float";
  row.frozen = res.frozen;
  row.freeze_time = res.frozen ? res.freeze_time : -1;
  row.steps_run = res.steps;
  row.wall_time_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(stop - start).count();
  return row;
}

// One independent run per n; a run that hits its step cap is recorded with
// frozen = 0 rather than raised.
inline std::vector<SweepRow> freeze_sweep(Family f, const std::vector<int>& ns, ModeKind mode,
                                          long long max_steps = -1) {
  std::vector<SweepRow> rows;
  for (int n : ns) {
    const long long cap = max_steps >= 0 ? max_steps : default_max_steps(f, n);
    rows.push_back(mode == ModeKind::Exact ? sweep_one<Rat>(f, n, cap)
                                           : sweep_one<double>(f, n, cap));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Sweep CSV
// ---------------------------------------------------------------------------

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "family,n,agents,mode,freeze_time,steps_run,frozen,wall_time_ms\n";
  for (const auto& r : rows)
    out << r.family << ',' << r.n << ',' << r.agents << ',' << r.mode << ',' << r.freeze_time
        << ',' << r.steps_run << ',' << (r.frozen ? 1 : 0) << ',' << format_double(r.wall_time_ms)
        << '\n';
}

inline std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::vector<SweepRow> rows;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty sweep CSV");
  if (line != "family,n,agents,mode,freeze_time,steps_run,frozen,wall_time_ms")
    throw std::runtime_error("unexpected sweep CSV header: " + line);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    SweepRow r;
    std::string field;
    auto next = [&]() {
      if (!std::getline(row, field, ','))
        throw std::runtime_error("line " + std::to_string(lineno) + ": missing field");
      return field;
    };
    r.family = next();
    r.n = std::stoi(next());
    r.agents = std::stoi(next());
    r.mode = next();
    r.freeze_time = std::stoll(next());
    r.steps_run = std::stoll(next());
    r.frozen = std::stoi(next()) != 0;
    r.wall_time_ms = std::stod(next());
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Log-log exponent fit
// ---------------------------------------------------------------------------

struct FitResult {
  double a = 0;         // T ~ a * n^b
  double b = 0;
  double residual = 0;  // root-mean-square residual in log space
  int rows = 0;
};

inline FitResult fit_points(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 3) throw std::invalid_argument("fit needs at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<std::pair<double, double>> logs;
  for (auto [n, T] : pts) {
    if (n <= 0 || T <= 0) throw std::invalid_argument("fit needs positive n and T");
    logs.emplace_back(std::log(n), std::log(T));
    sx += logs.back().first;
    sy += logs.back().second;
    sxx += logs.back().first * logs.back().first;
    sxy += logs.back().first * logs.back().second;
  }
  const double m = static_cast<double>(logs.size());
  const double denom = m * sxx - sx * sx;
  if (denom == 0) throw std::invalid_argument("degenerate fit: all n equal");
  FitResult fit;
  fit.rows = static_cast<int>(logs.size());
  fit.b = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.b * sx) / m;
  fit.a = std::exp(intercept);
  double ss = 0;
  for (auto [lx, ly] : logs) {
    const double e = ly - (intercept + fit.b * lx);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

// Least squares on (log n, log freeze_time) over the frozen rows.
inline FitResult fit_exponent(const std::vector<SweepRow>& rows) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows)
    if (r.frozen && r.freeze_time > 0)
      pts.emplace_back(static_cast<double>(r.n), static_cast<double>(r.freeze_time));
  return fit_points(pts);
}

// ---------------------------------------------------------------------------
// Trajectory dump
// ---------------------------------------------------------------------------

// Long-form CSV of a full run, one row per (t, agent, coordinate), with a
// trailing comment carrying the outcome. Values use the scalar's canonical
// text form, so an exact dump reloads bit-for-bit.
template <class S>
SimulationResult<S> emit_trajectory(const Config<S>& c, long long max_steps, std::ostream& out) {
  SimulationResult<S> res = simulate(c, max_steps, true);
  out << "t,agent,coord,value\n";
  for (size_t t = 0; t < res.trajectory.size(); ++t) {
    const Config<S>& state = res.trajectory[t];
    for (int i = 0; i < state.agents(); ++i)
      for (int d = 0; d < state.dim; ++d)
        out << t << ',' << i << ',' << d << ',' << numeric_traits<S>::to_string(state.at(i, d))
            << '\n';
  }
  out << "# frozen=" << (res.frozen ? 1 : 0) << " freeze_time=" << res.freeze_time << '\n';
  return res;
}

}  // namespace hk
