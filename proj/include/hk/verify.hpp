#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hk/gap_delta.hpp"
#include "hk/sweep.hpp"
#include "hk/walks.hpp"

namespace hk {

// Executable acceptance checks: every headline property of the library gets
// one deterministic pass/fail entry. Failures carry a diagnostic string.

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double ms = 0;
};

namespace checks {

inline std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

// is_frozen agrees with literal fixed-point-ness on random exact states.
inline bool frozen_fixed_point(std::string& detail) {
  std::mt19937_64 eng(1);
  int frozen_seen = 0, moving_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Config<Rat> c;
    const int agents = 1 + static_cast<int>(eng() % 8);
    const long span = trial % 2 == 0 ? 8 : 32;  // tight and spread-out mixes
    for (int i = 0; i < agents; ++i) {
      const long p = static_cast<long>(eng() % (span + 1));
      const long q = 1 + static_cast<long>(eng() % 8);
      c.x.push_back(rat(p, q));
    }
    c.sort_1d();
    const bool fixed = step(c).x == c.x;
    if (fixed != is_frozen(c)) {
      detail = "disagreement on trial " + std::to_string(trial);
      return false;
    }
    (fixed ? frozen_seen : moving_seen)++;
  }
  detail = "200 configs: " + std::to_string(frozen_seen) + " frozen, " +
           std::to_string(moving_seen) + " moving";
  return frozen_seen > 0 && moving_seen > 0;
}

// Freeze time of the unit-spaced line: 5n/6 up to a small constant, and at
// least n/2.
inline bool equal_spaced_freeze(std::string& detail) {
  std::ostringstream seen;
  for (int n : {12, 24, 48, 96, 300}) {
    auto res = simulate(make_equal_spaced<double>(n), default_max_steps(Family::EqualSpaced, n));
    if (!res.frozen) {
      detail = "n=" + std::to_string(n) + " did not freeze";
      return false;
    }
    const double target = 5.0 * n / 6.0;
    seen << " T(" << n << ")=" << res.freeze_time;
    if (std::abs(static_cast<double>(res.freeze_time) - target) > 4.0) {
      detail = "n=" + std::to_string(n) + ": T=" + std::to_string(res.freeze_time) +
               " not within 4 of " + fmt(target);
      return false;
    }
    if (2 * res.freeze_time < n) {
      detail = "n=" + std::to_string(n) + ": T below n/2";
      return false;
    }
  }
  detail = "within 4 of 5n/6:" + seen.str();
  return true;
}

// Exact gap/delta phase audit of the chain family, including the shape of
// the first topology change.
inline bool dumbbell_gap_phase(std::string& detail) {
  std::ostringstream seen;
  for (int n : {8, 16}) {
    const long long horizon = static_cast<long long>(n) * n + 2;
    auto res = simulate(make_dumbbell_chain<Rat>(n), horizon, true);
    PhaseReport rep = check_phase_invariants(res.trajectory, n);
    if (!rep.ok()) {
      detail = "n=" + std::to_string(n) + ": " + format_phase_report(rep);
      return false;
    }
    seen << " t*(" << n << ")=" << rep.t_star;
  }
  detail = "identity, recursion, bands, change shape all hold;" + seen.str();
  return true;
}

// Chain family freezes quadratically: per-n lower bound, fitted exponent,
// and the measured constant at the largest size.
inline bool dumbbell_quadratic(std::string& detail) {
  const std::vector<int> ns = {16, 32, 64, 128, 256};
  auto rows = freeze_sweep(Family::DumbbellChain, ns, ModeKind::Float);
  for (const auto& r : rows) {
    if (!r.frozen) {
      detail = "n=" + std::to_string(r.n) + " did not freeze";
      return false;
    }
    if (8 * r.freeze_time < static_cast<long long>(r.n) * r.n) {
      detail = "n=" + std::to_string(r.n) + ": T below n^2/8";
      return false;
    }
  }
  FitResult fit = fit_exponent(rows);
  const auto& last = rows.back();
  const double c = static_cast<double>(last.freeze_time) / (static_cast<double>(last.n) * last.n);
  detail = "b=" + fmt(fit.b) + " T(256)/256^2=" + fmt(c);
  if (fit.b < 1.8 || fit.b > 2.2) {
    detail += " (exponent outside [1.8, 2.2])";
    return false;
  }
  if (c < 0.15 || c > 0.35) {
    detail += " (constant outside [0.15, 0.35])";
    return false;
  }
  return true;
}

// Two weights with two solitary agents between them freeze in linear time.
inline bool kurz_linear(std::string& detail) {
  auto rows = freeze_sweep(Family::Kurz, {16, 32, 64, 128, 256}, ModeKind::Float);
  for (const auto& r : rows)
    if (!r.frozen) {
      detail = "n=" + std::to_string(r.n) + " did not freeze";
      return false;
    }
  FitResult fit = fit_exponent(rows);
  detail = "b=" + fmt(fit.b);
  if (fit.b < 0.8 || fit.b > 1.2) {
    detail += " (exponent outside [0.8, 1.2])";
    return false;
  }
  return true;
}

// Unit-side polygon: collapses to one point, but never faster than n^2/28.
inline bool polygon_lower_bound(std::string& detail) {
  std::ostringstream seen;
  for (int n : {8, 16, 32}) {
    auto res = simulate(make_polygon(n), default_max_steps(Family::Polygon, n));
    if (!res.frozen) {
      detail = "n=" + std::to_string(n) + " did not freeze";
      return false;
    }
    if (clusters(res.final_state).size() != 1) {
      detail = "n=" + std::to_string(n) + " froze into several clusters";
      return false;
    }
    if (28 * res.freeze_time < static_cast<long long>(n) * n) {
      detail = "n=" + std::to_string(n) + ": T below n^2/28";
      return false;
    }
    seen << " T(" << n << ")=" << res.freeze_time;
  }
  detail = "single cluster, T >= n^2/28:" + seen.str();
  return true;
}

// Folding the even cycle onto the path preserves visit counts exactly.
inline bool folding(std::string& detail) {
  for (int n = 2; n <= 6; ++n) {
    FoldingReport rep = folding_identity(n, 25);
    if (!rep.identity_ok || !rep.inequality_ok) {
      detail = "n=" + std::to_string(n) + " fails at t=" + std::to_string(rep.first_violation_t);
      return false;
    }
  }
  detail = "identity and domination exact for n=2..6, t<=25";
  return true;
}

// Visit counts at the path end grow like sqrt(t): bounded, stable ratio
// across sizes, and the Monte Carlo estimator agrees with the exact count.
inline bool visits_sqrt_shape(std::string& detail) {
  std::vector<double> maxima;
  for (int n : {5, 10, 20}) {
    const TransitionMatrix P = path_matrix(n);
    std::vector<Rat> row(n, Rat(0)), next(n);
    row[0] = 1;
    Rat h = 1;
    double best = 0;
    for (long long t = 1; t <= static_cast<long long>(n) * n; ++t) {
      for (int j = 0; j < n; ++j) next[j] = 0;
      for (int i = 0; i < n; ++i) {
        if (row[i] == 0) continue;
        for (int j = std::max(0, i - 1); j <= std::min(n - 1, i + 1); ++j)
          next[j] += row[i] * P.at(i, j);
      }
      row.swap(next);
      h += row[0];
      best = std::max(best, h.get_d() / std::sqrt(static_cast<double>(t)));
    }
    maxima.push_back(best);
  }
  const double lo = *std::min_element(maxima.begin(), maxima.end());
  const double hi = *std::max_element(maxima.begin(), maxima.end());
  const Rat exact = expected_hits(path_matrix(10), 0, 50).h[0];
  const double mc = mc_hits(path_matrix(10), 0, 0, 50, 100000, 12345);
  const double err = std::abs(mc - exact.get_d());
  detail = "max h11/sqrt(t) in [" + fmt(lo) + ", " + fmt(hi) + "], mc err=" + fmt(err);
  if (hi > 4.0) {
    detail += " (cap 4 exceeded)";
    return false;
  }
  if ((hi - lo) / lo >= 0.25) {
    detail += " (spread >= 25%)";
    return false;
  }
  if (err >= 0.05) {
    detail += " (mc off by >= 0.05)";
    return false;
  }
  return true;
}

// The central-binomial shift ratio stays below 1, certifies geometric decay
// in the shift count, and settles under e^{-1/2}.
inline bool binomial_decay_constant(std::string& detail) {
  BinomialDecayResult res = binomial_decay(400, 5);
  detail = "kappa*=" + to_string(res.kappa) + " at m=" + std::to_string(res.argmax_m) +
           ", <=e^{-1/2} from m=" + std::to_string(res.decay_threshold);
  if (!res.less_than_one) {
    detail += " (kappa >= 1)";
    return false;
  }
  if (!res.inequality_ok) {
    detail += " (r-shift inequality fails)";
    return false;
  }
  if (!res.tail_ok) {
    detail += " (no stable tail below e^{-1/2})";
    return false;
  }
  return true;
}

// Recursion iteration, power-sum form, and the visit-count expression agree
// exactly.
inline bool recurrence_triple(std::string& detail) {
  for (int n = 3; n <= 10; ++n)
    for (long kv : {1L, 2L}) {
      const Rat kappa(kv);
      auto states = delta_recurrence(n, kappa, 50);
      for (long long t = 1; t <= 50; ++t) {
        const auto closed = delta_closed_form(n, kappa, t);
        if (states[static_cast<size_t>(t)].delta != closed) {
          detail = "n=" + std::to_string(n) + " t=" + std::to_string(t) +
                   ": recurrence != closed form";
          return false;
        }
        if (closed[0] != delta_first_from_hits(n, kappa, t)) {
          detail = "n=" + std::to_string(n) + " t=" + std::to_string(t) +
                   ": closed form != visit-count form";
          return false;
        }
      }
    }
  detail = "three forms identical for n=3..10, t<=50, kappa in {1,2}";
  return true;
}

// The planar triple regains its lost edge and collapses onto (1/3, 0) at
// t = 2, exactly.
inline bool reconnection_regression(std::string& detail) {
  auto res = simulate(make_reconnection_triple<Rat>(), 10, true);
  if (!res.frozen || res.freeze_time != 2) {
    detail = "freeze_time=" + std::to_string(res.freeze_time) + " (expected 2)";
    return false;
  }
  const Rat third = rat(1, 3);
  for (int i = 0; i < 3; ++i)
    if (res.final_state.at(i, 0) != third || res.final_state.at(i, 1) != 0) {
      detail = "agent " + std::to_string(i) + " not at (1/3, 0)";
      return false;
    }
  if (clusters(res.final_state).size() != 1) {
    detail = "final state is not a single cluster";
    return false;
  }
  detail = "frozen at t=2 on (1/3, 0)";
  return true;
}

// Exact and float freeze times coincide across the one-dimensional families.
inline bool mode_agreement(std::string& detail) {
  int compared = 0;
  for (int n = 2; n <= 32; n += 2) {
    std::vector<Family> fams = {Family::EqualSpaced, Family::Kurz};
    if (n >= 4) fams.push_back(Family::DumbbellChain);
    for (Family f : fams) {
      const long long cap = default_max_steps(f, n);
      auto exact = simulate(make_family<Rat>(f, n), cap);
      auto flt = simulate(make_family<double>(f, n), cap);
      if (!exact.frozen || !flt.frozen || exact.freeze_time != flt.freeze_time) {
        detail = std::string(family_name(f)) + " n=" + std::to_string(n) + ": exact T=" +
                 std::to_string(exact.freeze_time) + ", float T=" + std::to_string(flt.freeze_time);
        return false;
      }
      ++compared;
    }
  }
  detail = std::to_string(compared) + " runs agree across modes";
  return true;
}

}  // namespace checks

inline const std::vector<std::pair<std::string, bool (*)(std::string&)>>& check_table() {
  static const std::vector<std::pair<std::string, bool (*)(std::string&)>> table = {
      {"frozen-fixed-point-equivalence", &checks::frozen_fixed_point},
      {"equal-spaced-freeze-time", &checks::equal_spaced_freeze},
      {"dumbbell-gap-phase-exact", &checks::dumbbell_gap_phase},
      {"dumbbell-quadratic-scaling", &checks::dumbbell_quadratic},
      {"kurz-linear-scaling", &checks::kurz_linear},
      {"polygon-quadratic-lower-bound", &checks::polygon_lower_bound},
      {"path-cycle-folding-identity", &checks::folding},
      {"path-visits-sqrt-shape", &checks::visits_sqrt_shape},
      {"binomial-decay-constant", &checks::binomial_decay_constant},
      {"kick-recurrence-triple-agreement", &checks::recurrence_triple},
      {"planar-reconnection-regression", &checks::reconnection_regression},
      {"exact-float-mode-agreement", &checks::mode_agreement},
  };
  return table;
}

inline CheckResult run_check(int id) {
  const auto& table = check_table();
  if (id < 1 || id > static_cast<int>(table.size()))
    throw std::out_of_range("check id out of range");
  CheckResult res;
  res.id = id;
  res.name = table[static_cast<size_t>(id - 1)].first;
  const auto start = std::chrono::steady_clock::now();
  res.pass = table[static_cast<size_t>(id - 1)].second(res.detail);
  const auto stop = std::chrono::steady_clock::now();
  res.ms = std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(stop - start).count();
  return res;
}

inline std::vector<int> suite_ids(const std::string& suite) {
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  if (suite == "core") return {1, 2, 11, 12};
  if (suite == "theorem1") return {3};
  if (suite == "scaling") return {4, 5, 6};
  if (suite == "walks") return {7, 8, 9, 10};
  throw std::invalid_argument("unknown suite: " + suite);
}

inline std::vector<CheckResult> run_suite(const std::string& suite) {
  std::vector<CheckResult> out;
  for (int id : suite_ids(suite)) out.push_back(run_check(id));
  return out;
}

// One line per check; returns the number of failures.
inline int print_report(std::ostream& out, const std::vector<CheckResult>& results) {
  int failures = 0;
  for (const auto& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << ' ';
    if (r.id < 10) out << ' ';
    out << r.id << ' ' << r.name << " (" << checks::fmt(r.ms / 1000.0) << "s) " << r.detail
        << '\n';
    if (!r.pass) ++failures;
  }
  return failures;
}

}  // namespace hk
