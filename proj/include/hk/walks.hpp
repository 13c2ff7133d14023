#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "hk/rational.hpp"

namespace hk {

// Lazy walks on the path and the even cycle, with exact expected visit
// counts, the cycle-to-path folding, the central-binomial decay constant, and
// the kicked averaging recursion those walks bound.

// ---------------------------------------------------------------------------
// Transition matrices
// ---------------------------------------------------------------------------

struct TransitionMatrix {
  int size = 0;
  std::vector<Rat> p;  // row-major, row-stochastic
  const Rat& at(int i, int j) const { return p[static_cast<size_t>(i) * size + j]; }
  Rat& at(int i, int j) { return p[static_cast<size_t>(i) * size + j]; }
};

// Lazy walk on the path 1..n: stay/step with probability 1/3 on the band,
// the missing mass folded into 2/3 self-loops at both ends.
inline TransitionMatrix path_matrix(int n) {
  if (n < 2) throw std::invalid_argument("path needs n >= 2");
  TransitionMatrix P;
  P.size = n;
  P.p.assign(static_cast<size_t>(n) * n, Rat(0));
  const Rat third = rat(1, 3);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - 1); j <= std::min(n - 1, i + 1); ++j) P.at(i, j) = third;
  P.at(0, 0) = rat(2, 3);
  P.at(n - 1, n - 1) = rat(2, 3);
  return P;
}

// Lazy walk on the cycle of length 2n: 1/3 at offsets -1, 0, +1.
inline TransitionMatrix cycle_matrix(int n) {
  if (n < 2) throw std::invalid_argument("cycle needs n >= 2");
  TransitionMatrix P;
  const int size = 2 * n;
  P.size = size;
  P.p.assign(static_cast<size_t>(size) * size, Rat(0));
  const Rat third = rat(1, 3);
  for (int i = 0; i < size; ++i) {
    P.at(i, (i + size - 1) % size) += third;
    P.at(i, i) += third;
    P.at(i, (i + 1) % size) += third;
  }
  return P;
}

// Identify cycle states {i, 2n+1-i} (1-based). The lumped chain must be
// well-defined (both members of a class see identical class-total rows) and
// equals the path walk; violations throw.
inline TransitionMatrix fold_cycle_to_path(int n) {
  const TransitionMatrix C = cycle_matrix(n);
  TransitionMatrix F;
  F.size = n;
  F.p.assign(static_cast<size_t>(n) * n, Rat(0));
  auto partner = [&](int i) { return 2 * n - 1 - i; };  // 0-based pairing
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Rat from_a = C.at(a, b) + C.at(a, partner(b));
      Rat from_pa = C.at(partner(a), b) + C.at(partner(a), partner(b));
      if (from_a != from_pa) throw std::logic_error("cycle pairing is not lumpable");
      F.at(a, b) = from_a;
    }
  return F;
}

// ---------------------------------------------------------------------------
// Expected visit counts
// ---------------------------------------------------------------------------

struct HittingCounts {
  int source = 0;
  long long t = 0;
  std::vector<Rat> h;  // expected visits to j during steps 0..t, from source
};

// h[j] = sum over s = 0..t of (P^s)_{source, j}, by iterated row products.
inline HittingCounts expected_hits(const TransitionMatrix& P, int source, long long t) {
  if (source < 0 || source >= P.size) throw std::out_of_range("source out of range");
  if (t < 0) throw std::invalid_argument("horizon must be nonnegative");
  HittingCounts hc;
  hc.source = source;
  hc.t = t;
  std::vector<Rat> row(P.size, Rat(0));
  row[source] = 1;
  hc.h = row;
  std::vector<Rat> next(P.size);
  for (long long s = 1; s <= t; ++s) {
    for (int j = 0; j < P.size; ++j) next[j] = 0;
    for (int i = 0; i < P.size; ++i) {
      if (row[i] == 0) continue;
      for (int j = 0; j < P.size; ++j) {
        const Rat& pij = P.at(i, j);
        if (pij != 0) next[j] += row[i] * pij;
      }
    }
    row.swap(next);
    for (int j = 0; j < P.size; ++j) hc.h[j] += row[j];
  }
  return hc;
}

// Exact t-step return probability to the first node of the cycle walk.
inline Rat return_probability(int n, long long t) {
  const TransitionMatrix C = cycle_matrix(n);
  std::vector<Rat> row(C.size, Rat(0));
  row[0] = 1;
  std::vector<Rat> next(C.size);
  for (long long s = 0; s < t; ++s) {
    for (int j = 0; j < C.size; ++j) next[j] = 0;
    for (int i = 0; i < C.size; ++i) {
      if (row[i] == 0) continue;
      for (int j = 0; j < C.size; ++j)
        if (C.at(i, j) != 0) next[j] += row[i] * C.at(i, j);
    }
    row.swap(next);
  }
  return row[0];
}

// ---------------------------------------------------------------------------
// Monte Carlo cross-check
// ---------------------------------------------------------------------------

namespace detail {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double canonical_uniform(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

// Mean visit count to j over `samples` simulated walks of length t from i.
// Sample s draws from a generator seeded with splitmix64(seed + 1 + s), so
// results are reproducible and mergeable across any sample partition.
inline double mc_hits(const TransitionMatrix& P, int i, int j, long long t, long long samples,
                      uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (i < 0 || i >= P.size || j < 0 || j >= P.size) throw std::out_of_range("node out of range");
  std::vector<std::vector<double>> cum(P.size, std::vector<double>(P.size));
  for (int a = 0; a < P.size; ++a) {
    double acc = 0;
    for (int b = 0; b < P.size; ++b) {
      acc += P.at(a, b).get_d();
      cum[a][b] = acc;
    }
    cum[a][P.size - 1] = 1.0;  // swallow rounding in the last slot
  }
  long long total = 0;
  for (long long s = 0; s < samples; ++s) {
    std::mt19937_64 eng(detail::splitmix64(seed + 1 + static_cast<uint64_t>(s)));
    int pos = i;
    long long visits = pos == j ? 1 : 0;
    for (long long step = 0; step < t; ++step) {
      double u = detail::canonical_uniform(eng);
      const auto& row = cum[pos];
      pos = static_cast<int>(std::lower_bound(row.begin(), row.end(), u) - row.begin());
      if (pos == j) ++visits;
    }
    total += visits;
  }
  return static_cast<double>(total) / static_cast<double>(samples);
}

// ---------------------------------------------------------------------------
// Folding identity
// ---------------------------------------------------------------------------

struct FoldingReport {
  int n = 0;
  long long t_max = 0;
  bool identity_ok = true;    // path h_{1,1} = cycle h'_{1,1} + h'_{1,2n}
  bool inequality_ok = true;  // h'_{1,2n} <= h'_{1,1}
  long long first_violation_t = -1;
};

// Checks both statements exactly for every horizon 0..t_max.
inline FoldingReport folding_identity(int n, long long t_max) {
  FoldingReport rep;
  rep.n = n;
  rep.t_max = t_max;
  const TransitionMatrix P = path_matrix(n);
  const TransitionMatrix C = cycle_matrix(n);
  std::vector<Rat> prow(P.size, Rat(0)), crow(C.size, Rat(0));
  prow[0] = 1;
  crow[0] = 1;
  Rat h_path = 1, h_self = 1, h_far = 0;
  const int far = 2 * n - 1;
  auto advance = [](const TransitionMatrix& M, std::vector<Rat>& row) {
    std::vector<Rat> next(M.size, Rat(0));
    for (int i = 0; i < M.size; ++i) {
      if (row[i] == 0) continue;
      for (int j = 0; j < M.size; ++j)
        if (M.at(i, j) != 0) next[j] += row[i] * M.at(i, j);
    }
    row.swap(next);
  };
  for (long long t = 0;; ++t) {
    if (h_path != h_self + h_far || h_far > h_self) {
      rep.identity_ok = h_path == h_self + h_far;
      rep.inequality_ok = h_far <= h_self;
      rep.first_violation_t = t;
      return rep;
    }
    if (t == t_max) break;
    advance(P, prow);
    advance(C, crow);
    h_path += prow[0];
    h_self += crow[0];
    h_far += crow[far];
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Central-binomial decay
// ---------------------------------------------------------------------------

struct BinomialDecayResult {
  int m_max = 0;
  int r_max = 0;
  Rat kappa;               // max single-shift ratio over the scan
  int argmax_m = 0;
  bool less_than_one = false;
  bool inequality_ok = false;  // r-shift ratio <= kappa^r for all scanned m, r
  int decay_threshold = -1;    // least m from which the ratio stays <= e^{-1/2}
  bool tail_ok = false;
};

// Ratio binom(m, floor(m/2) + ceil(sqrt(m))) / binom(m, floor(m/2)), its
// maximum over 2..m_max, and the geometric decay it certifies for r shifts.
// The e^{-1/2} comparison uses a rational strictly below e^{-1/2}, so a pass
// is conservative.
inline BinomialDecayResult binomial_decay(int m_max, int r_max) {
  if (m_max < 2) throw std::invalid_argument("scan needs m_max >= 2");
  if (r_max < 1) throw std::invalid_argument("scan needs r_max >= 1");
  BinomialDecayResult res;
  res.m_max = m_max;
  res.r_max = r_max;
  res.kappa = 0;
  const Rat exp_half_low = rat(6065306597126334L, 10000000000000000L);  // < e^{-1/2}
  int last_above = 1;
  std::vector<Rat> ratio1(m_max + 1, Rat(0));
  for (int m = 2; m <= m_max; ++m) {
    const long half = m / 2;
    const long shift = isqrt_ceil(m);
    const Int center = binomial(m, half);
    ratio1[m] = Rat(binomial(m, half + shift)) / Rat(center);
    if (ratio1[m] > res.kappa) {
      res.kappa = ratio1[m];
      res.argmax_m = m;
    }
    if (ratio1[m] > exp_half_low) last_above = m;
  }
  res.less_than_one = res.kappa < 1;
  res.decay_threshold = last_above + 1;
  res.tail_ok = res.decay_threshold <= m_max;

  res.inequality_ok = true;
  for (int m = 2; m <= m_max && res.inequality_ok; ++m) {
    const long half = m / 2;
    const long shift = isqrt_ceil(m);
    const Rat center(binomial(m, half));
    Rat bound = center;
    for (int r = 1; r <= r_max; ++r) {
      bound *= res.kappa;
      if (Rat(binomial(m, half + static_cast<long>(r) * shift)) > bound) {
        res.inequality_ok = false;
        break;
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Kicked averaging recursion
// ---------------------------------------------------------------------------

struct RecurrenceState {
  int n = 0;
  Rat kappa;
  long long t = 0;
  std::vector<Rat> delta;  // n entries, positions 1..n of the chain
};

// delta_{t+1} = v + P delta_t with v = (kappa, 0, ..., 0, kappa), written out
// as the per-coordinate rules. Returns states t = 0..t_max.
inline std::vector<RecurrenceState> delta_recurrence(int n, const Rat& kappa, long long t_max) {
  if (n < 2) throw std::invalid_argument("recursion needs n >= 2");
  if (kappa <= 0) throw std::invalid_argument("kappa must be positive");
  if (t_max < 0) throw std::invalid_argument("t_max must be nonnegative");
  const Rat third = rat(1, 3);
  const Rat two_thirds = rat(2, 3);
  std::vector<RecurrenceState> out;
  RecurrenceState cur{n, kappa, 0, std::vector<Rat>(n, Rat(0))};
  out.push_back(cur);
  for (long long t = 1; t <= t_max; ++t) {
    std::vector<Rat> next(n);
    const auto& d = cur.delta;
    next[0] = kappa + two_thirds * d[0] + third * d[1];
    next[n - 1] = kappa + two_thirds * d[n - 1] + third * d[n - 2];
    for (int i = 1; i + 1 < n; ++i) next[i] = third * (d[i - 1] + d[i] + d[i + 1]);
    cur.delta.swap(next);
    cur.t = t;
    out.push_back(cur);
  }
  return out;
}

// Power-sum form of the same iteration: (I + P + ... + P^{t-1}) v.
inline std::vector<Rat> delta_closed_form(int n, const Rat& kappa, long long t) {
  if (t < 1) throw std::invalid_argument("closed form needs t >= 1");
  const TransitionMatrix P = path_matrix(n);
  std::vector<Rat> cur(n, Rat(0)), acc(n, Rat(0)), next(n);
  cur[0] = kappa;
  cur[n - 1] += kappa;
  for (long long s = 0; s < t; ++s) {
    for (int j = 0; j < n; ++j) acc[j] += cur[j];
    if (s + 1 == t) break;
    for (int j = 0; j < n; ++j) next[j] = 0;
    for (int i = 0; i < n; ++i) {
      if (cur[i] == 0) continue;
      for (int j = std::max(0, i - 1); j <= std::min(n - 1, i + 1); ++j)
        next[j] += cur[i] * P.at(i, j);
    }
    cur.swap(next);
  }
  return acc;
}

// First coordinate via visit counts: kappa kicks enter at both ends once per
// step, so after t steps the t kicks have diffused for 0..t-1 steps — hence
// the horizon t-1 on the visit counts.
inline Rat delta_first_from_hits(int n, const Rat& kappa, long long t) {
  if (t < 1) throw std::invalid_argument("identity needs t >= 1");
  HittingCounts hc = expected_hits(path_matrix(n), 0, t - 1);
  return kappa * (hc.h[0] + hc.h[n - 1]);
}

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

inline void write_hits_csv(std::ostream& out, int n, long long t_max) {
  out << "t,h11,sqrt_t,ratio\n";
  const TransitionMatrix P = path_matrix(n);
  std::vector<Rat> row(n, Rat(0));
  row[0] = 1;
  Rat h = 1;
  std::vector<Rat> next(n);
  for (long long t = 1; t <= t_max; ++t) {
    for (int j = 0; j < n; ++j) next[j] = 0;
    for (int i = 0; i < n; ++i) {
      if (row[i] == 0) continue;
      for (int j = std::max(0, i - 1); j <= std::min(n - 1, i + 1); ++j)
        next[j] += row[i] * P.at(i, j);
    }
    row.swap(next);
    h += row[0];
    const double sq = std::sqrt(static_cast<double>(t));
    out << t << ',' << to_string(h) << ',' << format_double(sq) << ','
        << format_double(h.get_d() / sq) << '\n';
  }
}

inline void write_return_csv(std::ostream& out, int n, long long t_max) {
  out << "t,q,sqrt_t,ratio\n";
  const TransitionMatrix C = cycle_matrix(n);
  std::vector<Rat> row(C.size, Rat(0));
  row[0] = 1;
  std::vector<Rat> next(C.size);
  for (long long t = 1; t <= t_max; ++t) {
    for (int j = 0; j < C.size; ++j) next[j] = 0;
    for (int i = 0; i < C.size; ++i) {
      if (row[i] == 0) continue;
      for (int j = 0; j < C.size; ++j)
        if (C.at(i, j) != 0) next[j] += row[i] * C.at(i, j);
    }
    row.swap(next);
    const double sq = std::sqrt(static_cast<double>(t));
    out << t << ',' << to_string(row[0]) << ',' << format_double(sq) << ','
        << format_double(row[0].get_d() * sq) << '\n';
  }
}

inline void write_delta_csv(std::ostream& out, const std::vector<RecurrenceState>& states) {
  out << "t,i,delta\n";
  for (const auto& st : states)
    for (int i = 0; i < st.n; ++i)
      out << st.t << ',' << (i + 1) << ',' << to_string(st.delta[i]) << '\n';
}

}  // namespace hk
