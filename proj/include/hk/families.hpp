#pragma once

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hk/configuration.hpp"

namespace hk {

// ---------------------------------------------------------------------------
// Built-in families
// ---------------------------------------------------------------------------

enum class Family { EqualSpaced, DumbbellChain, Kurz, Polygon, ReconnectionTriple, File };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::EqualSpaced: return "equal-spaced";
    case Family::DumbbellChain: return "dumbbell-chain";
    case Family::Kurz: return "kurz";
    case Family::Polygon: return "polygon";
    case Family::ReconnectionTriple: return "triple";
    case Family::File: return "file";
  }
  throw std::logic_error("unknown family");
}

inline Family family_from_name(const std::string& s) {
  for (Family f : {Family::EqualSpaced, Family::DumbbellChain, Family::Kurz, Family::Polygon,
                   Family::ReconnectionTriple, Family::File})
    if (s == family_name(f)) return f;
  throw std::invalid_argument("unknown family: " + s);
}

// Agents at 1, 2, ..., n.
template <class S>
Config<S> make_equal_spaced(int n) {
  if (n < 1) throw std::invalid_argument("equal-spaced needs n >= 1");
  Config<S> c;
  for (int i = 1; i <= n; ++i) c.x.push_back(numeric_traits<S>::from_long(i));
  return c;
}

// Two weights of n coincident agents at -1/n and n + 1/n, joined by a chain
// at 0, 1, ..., n. Total 3n + 1 agents; n must be even so the chain midpoint
// separates the halves symmetrically.
template <class S>
Config<S> make_dumbbell_chain(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("dumbbell-chain needs even n >= 4");
  using T = numeric_traits<S>;
  Config<S> c;
  for (int i = 0; i < n; ++i) c.x.push_back(T::from_ratio(-1, n));
  for (int i = 0; i <= n; ++i) c.x.push_back(T::from_long(i));
  for (int i = 0; i < n; ++i)
    c.x.push_back(T::from_long(n) + T::from_ratio(1, n));
  return c;
}

// Two weights of n agents hugging a unit interval: n at -1/n, singles at 0
// and 1, n at 1 + 1/n. Total 2n + 2 agents.
template <class S>
Config<S> make_kurz(int n) {
  if (n < 2) throw std::invalid_argument("kurz needs n >= 2");
  using T = numeric_traits<S>;
  Config<S> c;
  for (int i = 0; i < n; ++i) c.x.push_back(T::from_ratio(-1, n));
  c.x.push_back(T::from_long(0));
  c.x.push_back(T::from_long(1));
  for (int i = 0; i < n; ++i) c.x.push_back(T::from_long(1) + T::from_ratio(1, n));
  return c;
}

// Vertices of the regular n-gon with unit side length. The circumradius is
// irrational, so only the float scalar supports this family.
inline Config<double> make_polygon(int n) {
  if (n < 3) throw std::invalid_argument("polygon needs n >= 3");
  Config<double> c;
  c.dim = 2;
  const double R = 1.0 / (2.0 * std::sin(std::numbers::pi / n));
  for (int i = 0; i < n; ++i) {
    double a = 2.0 * std::numbers::pi * i / n;
    c.x.push_back(R * std::cos(a));
    c.x.push_back(R * std::sin(a));
  }
  return c;
}

// Three agents in the plane whose receptivity graph loses an edge after one
// step and regains it later: (0, -1/2), (0, 1/2), (1, 0).
template <class S>
Config<S> make_reconnection_triple() {
  using T = numeric_traits<S>;
  Config<S> c;
  c.dim = 2;
  c.x = {T::from_long(0), T::from_ratio(-1, 2),
         T::from_long(0), T::from_ratio(1, 2),
         T::from_long(1), T::from_long(0)};
  return c;
}

// ---------------------------------------------------------------------------
// Config files
// ---------------------------------------------------------------------------

// One agent per line: whitespace-separated coordinates, each a decimal or a
// p/q rational. '#' starts a comment; blank lines are skipped.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

template <class S>
Config<S> load_config(std::istream& in) {
  Config<S> c;
  c.dim = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::vector<S> coords;
    std::string tok;
    while (row >> tok) {
      try {
        coords.push_back(numeric_traits<S>::parse(tok));
      } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
      }
    }
    if (coords.empty()) continue;
    if (c.dim == 0) c.dim = static_cast<int>(coords.size());
    if (static_cast<int>(coords.size()) != c.dim)
      throw ParseError(lineno, "inconsistent dimension: expected " + std::to_string(c.dim) +
                                   " coordinates, got " + std::to_string(coords.size()));
    c.x.insert(c.x.end(), coords.begin(), coords.end());
  }
  if (c.dim == 0) c.dim = 1;
  if (c.dim == 1) c.sort_1d();
  return c;
}

template <class S>
Config<S> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_config<S>(in);
}

template <class S>
void save_config(const Config<S>& c, std::ostream& out) {
  for (int i = 0; i < c.agents(); ++i) {
    for (int d = 0; d < c.dim; ++d) {
      if (d) out << ' ';
      out << numeric_traits<S>::to_string(c.at(i, d));
    }
    out << '\n';
  }
}

// Builds the named family. `n` is ignored by the triple and required
// otherwise; Polygon only exists over the float scalar.
template <class S>
Config<S> make_family(Family f, int n) {
  switch (f) {
    case Family::EqualSpaced: return make_equal_spaced<S>(n);
    case Family::DumbbellChain: return make_dumbbell_chain<S>(n);
    case Family::Kurz: return make_kurz<S>(n);
    case Family::Polygon:
      if constexpr (std::is_same_v<S, double>) return make_polygon(n);
      else throw std::invalid_argument("polygon requires float mode");
    case Family::ReconnectionTriple: return make_reconnection_triple<S>();
    case Family::File: throw std::invalid_argument("file family needs a path, not n");
  }
  throw std::logic_error("unknown family");
}

}  // namespace hk
