#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "hk/families.hpp"
#include "hk/gap_delta.hpp"

using hk::Config;
using hk::Rat;
using hk::rat;

TEST_CASE("family names round-trip") {
  for (hk::Family f : {hk::Family::EqualSpaced, hk::Family::DumbbellChain, hk::Family::Kurz,
                       hk::Family::Polygon, hk::Family::ReconnectionTriple, hk::Family::File})
    REQUIRE(hk::family_from_name(hk::family_name(f)) == f);
  REQUIRE_THROWS_AS(hk::family_from_name("nope"), std::invalid_argument);
}

TEST_CASE("equal spacing puts agents at 1..n") {
  Config<Rat> c = hk::make_equal_spaced<Rat>(5);
  REQUIRE(c.agents() == 5);
  for (int i = 0; i < 5; ++i) REQUIRE(c.x[i] == Rat(i + 1));
  REQUIRE_THROWS_AS(hk::make_equal_spaced<Rat>(0), std::invalid_argument);
}

TEST_CASE("dumbbell chain layout and symmetry") {
  const int n = 6;
  Config<Rat> c = hk::make_dumbbell_chain<Rat>(n);
  REQUIRE(c.agents() == 3 * n + 1);
  REQUIRE(c.x.front() == rat(-1, n));
  REQUIRE(c.x.back() == Rat(n) + rat(1, n));
  REQUIRE(c.x.back() - c.x.front() == Rat(n) + rat(2, n));
  for (int i = 0; i <= 3 * n; ++i) REQUIRE(c.x[i] + c.x[3 * n - i] == Rat(n));  // mirror about n/2
  auto y0 = hk::gaps_from_state(c, n);
  REQUIRE(y0.y.front() == rat(1, n));
  REQUIRE(y0.y.back() == rat(1, n));
  for (int i = 1; i <= n; ++i) REQUIRE(y0.y[i] == Rat(1));
  REQUIRE_THROWS_AS(hk::make_dumbbell_chain<Rat>(5), std::invalid_argument);
  REQUIRE_THROWS_AS(hk::make_dumbbell_chain<Rat>(2), std::invalid_argument);
}

TEST_CASE("kurz layout") {
  const int n = 4;
  Config<Rat> c = hk::make_kurz<Rat>(n);
  REQUIRE(c.agents() == 2 * n + 2);
  for (int i = 0; i < n; ++i) REQUIRE(c.x[i] == rat(-1, n));
  REQUIRE(c.x[n] == Rat(0));
  REQUIRE(c.x[n + 1] == Rat(1));
  for (int i = n + 2; i < 2 * n + 2; ++i) REQUIRE(c.x[i] == Rat(1) + rat(1, n));
  REQUIRE_THROWS_AS(hk::make_kurz<Rat>(1), std::invalid_argument);
}

TEST_CASE("polygon has unit sides") {
  for (int n : {3, 4, 5, 6, 12}) {
    Config<double> c = hk::make_polygon(n);
    REQUIRE(c.dim == 2);
    REQUIRE(c.agents() == n);
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      const double dx = c.at(i, 0) - c.at(j, 0);
      const double dy = c.at(i, 1) - c.at(j, 1);
      REQUIRE(std::abs(std::hypot(dx, dy) - 1.0) < 1e-12);
    }
  }
  REQUIRE(std::abs(hk::make_polygon(4).at(0, 0) - std::sqrt(2.0) / 2.0) < 1e-12);
  REQUIRE(std::abs(hk::make_polygon(6).at(0, 0) - 1.0) < 1e-12);  // hexagon circumradius
  REQUIRE_THROWS_AS(hk::make_polygon(2), std::invalid_argument);
}

TEST_CASE("reconnection triple coordinates") {
  Config<Rat> c = hk::make_reconnection_triple<Rat>();
  REQUIRE(c.dim == 2);
  REQUIRE(c.at(0, 0) == Rat(0));
  REQUIRE(c.at(0, 1) == rat(-1, 2));
  REQUIRE(c.at(1, 1) == rat(1, 2));
  REQUIRE(c.at(2, 0) == Rat(1));
}

TEST_CASE("make_family dispatch honors mode limits") {
  REQUIRE(hk::make_family<double>(hk::Family::Polygon, 5).agents() == 5);
  REQUIRE_THROWS_AS(hk::make_family<Rat>(hk::Family::Polygon, 5), std::invalid_argument);
  REQUIRE_THROWS_AS(hk::make_family<Rat>(hk::Family::File, 5), std::invalid_argument);
}

TEST_CASE("config files parse rationals, decimals, and comments") {
  std::istringstream in("# header\n2\n0\n\n1/2  # inline note\n");
  Config<Rat> c = hk::load_config<Rat>(in);
  REQUIRE(c.dim == 1);
  REQUIRE(c.agents() == 3);
  REQUIRE(c.x == std::vector<Rat>{Rat(0), rat(1, 2), Rat(2)});  // sorted on load
}

TEST_CASE("config files infer dimension from the first row") {
  std::istringstream in("0 -0.5\n0 0.5\n1 0\n");
  Config<double> c = hk::load_config<double>(in);
  REQUIRE(c.dim == 2);
  REQUIRE(c.agents() == 3);
  REQUIRE(c.at(0, 1) == -0.5);
  REQUIRE(c.at(2, 0) == 1.0);
}

TEST_CASE("config file errors carry line numbers") {
  std::istringstream bad_dim("0 1\n2\n");
  try {
    hk::load_config<Rat>(bad_dim);
    FAIL("expected a parse error");
  } catch (const hk::ParseError& e) {
    REQUIRE(e.line == 2);
    REQUIRE(std::string(e.what()).find("inconsistent dimension") != std::string::npos);
  }
  std::istringstream zero_den("0\n1/0\n");
  try {
    hk::load_config<Rat>(zero_den);
    FAIL("expected a parse error");
  } catch (const hk::ParseError& e) {
    REQUIRE(e.line == 2);
  }
  REQUIRE_THROWS_AS(hk::load_config<Rat>("/no/such/file"), std::runtime_error);
}

TEST_CASE("save and load round-trip exactly") {
  Config<Rat> c = hk::make_dumbbell_chain<Rat>(4);
  std::ostringstream out;
  hk::save_config(c, out);
  std::istringstream in(out.str());
  Config<Rat> back = hk::load_config<Rat>(in);
  REQUIRE(back.dim == c.dim);
  REQUIRE(back.x == c.x);
}
