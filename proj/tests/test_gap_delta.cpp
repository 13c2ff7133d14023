#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "hk/families.hpp"
#include "hk/gap_delta.hpp"

using hk::Config;
using hk::Rat;
using hk::rat;

TEST_CASE("update matrix entries for n=4") {
  auto M = hk::build_update_matrix(4);
  REQUIRE(M.at(0, 0) == rat(2, 15));
  REQUIRE(M.at(0, 1) == rat(1, 6));
  REQUIRE(M.at(0, 2) == Rat(0));
  REQUIRE(M.at(1, 0) == rat(2, 3));
  REQUIRE(M.at(1, 1) == rat(1, 2));
  REQUIRE(M.at(1, 2) == rat(1, 3));
  // middle row is the plain three-point band
  REQUIRE(M.at(2, 0) == Rat(0));
  REQUIRE(M.at(2, 1) == rat(1, 3));
  REQUIRE(M.at(2, 2) == rat(1, 3));
  REQUIRE(M.at(2, 3) == rat(1, 3));
  REQUIRE(M.at(2, 4) == Rat(0));
  REQUIRE(M.at(2, 5) == Rat(0));
  REQUIRE_THROWS_AS(hk::build_update_matrix(2), std::invalid_argument);
}

TEST_CASE("update matrix is symmetric about its midpoint") {
  for (int n : {3, 4, 7}) {
    auto M = hk::build_update_matrix(n);
    const int size = n + 2;
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j)
        REQUIRE(M.at(i, j) == M.at(size - 1 - i, size - 1 - j));
  }
}

TEST_CASE("gap extraction matches the layout") {
  const int n = 4;
  Config<Rat> c = hk::make_dumbbell_chain<Rat>(n);
  auto y0 = hk::gaps_from_state(c, n);
  REQUIRE(y0.y == std::vector<Rat>{rat(1, 4), Rat(1), Rat(1), Rat(1), Rat(1), rat(1, 4)});

  REQUIRE_THROWS_AS(hk::gaps_from_state(hk::make_equal_spaced<Rat>(13), 4), std::domain_error);
}

TEST_CASE("gap extraction rejects split weight clusters") {
  const int n = 4;
  Config<Rat> c = hk::make_dumbbell_chain<Rat>(n);
  c.x[0] -= rat(1, 100);
  REQUIRE_THROWS_AS(hk::gaps_from_state(c, n), std::domain_error);
}

TEST_CASE("one exact step follows the matrix update") {
  for (int n : {4, 6}) {
    Config<Rat> c = hk::make_dumbbell_chain<Rat>(n);
    auto M = hk::build_update_matrix(n);
    auto y0 = hk::gaps_from_state(c, n, 0);
    auto y1 = hk::gaps_from_state(hk::step(c), n, 1);
    REQUIRE(y1.y == hk::apply_update(M, y0.y));
  }
}

TEST_CASE("deltas start at zero and stay mirror-symmetric") {
  const int n = 6;
  auto res = hk::simulate(hk::make_dumbbell_chain<Rat>(n), 3, true);
  auto d0 = hk::delta_from_gaps(hk::gaps_from_state(res.trajectory[0], n, 0));
  for (const Rat& v : d0.delta) REQUIRE(v == Rat(0));
  for (long long t = 1; t <= 3; ++t) {
    auto d = hk::delta_from_gaps(hk::gaps_from_state(res.trajectory[static_cast<size_t>(t)], n, t));
    for (int i = 0; i <= n + 1; ++i) {
      REQUIRE(d.delta[i] == d.delta[n + 1 - i]);
      REQUIRE(d.delta[i] >= 0);
    }
  }
}

TEST_CASE("phase audit passes on a mid-sized chain") {
  const int n = 8;
  const long long horizon = static_cast<long long>(n) * n + 2;
  auto res = hk::simulate(hk::make_dumbbell_chain<Rat>(n), horizon, true);
  auto rep = hk::check_phase_invariants(res.trajectory, n);
  INFO(hk::format_phase_report(rep));
  REQUIRE(rep.ok());
  REQUIRE(rep.t_star >= n * n / 10);
  REQUIRE(rep.t_star <= n * n / 2);
  REQUIRE(rep.identity_steps == rep.t_star);
  REQUIRE(rep.notes.empty());
}

TEST_CASE("phase audit reports partial trajectories honestly") {
  const int n = 8;
  auto res = hk::simulate(hk::make_dumbbell_chain<Rat>(n), 5, true);
  auto rep = hk::check_phase_invariants(res.trajectory, n);
  REQUIRE(rep.t_star == -1);
  REQUIRE(rep.phase_ok());
  REQUIRE_FALSE(rep.ok());
  REQUIRE_FALSE(rep.notes.empty());
  REQUIRE_THROWS_AS(hk::check_phase_invariants({}, n), std::invalid_argument);
}

TEST_CASE("first topology change lands in the quadratic band") {
  for (int n : {16, 32, 64, 128}) {
    Config<double> cur = hk::make_dumbbell_chain<double>(n);
    const std::vector<int> profile0 = hk::reach_profile(cur);
    long long t_star = -1;
    for (long long t = 1; t <= static_cast<long long>(n) * n / 2; ++t) {
      cur = hk::step(cur);
      if (hk::reach_profile(cur) != profile0) {
        t_star = t;
        break;
      }
    }
    INFO("n=" << n);
    REQUIRE(t_star >= n * n / 10);
    REQUIRE(t_star <= n * n / 2);
  }
}

TEST_CASE("growth series tracks delta[1] against sqrt t") {
  const int n = 16;
  auto res = hk::simulate(hk::make_dumbbell_chain<double>(n), n * n / 8, true);
  auto pts = hk::exploratory_growth(res.trajectory, n);
  REQUIRE(pts.front().t == 1);
  REQUIRE(pts.back().t == n * n / 8);
  const auto& last = pts.back();
  REQUIRE(last.ratio > 0.5);
  REQUIRE(last.ratio < 4.0);
  REQUIRE(last.delta1 == Catch::Approx(last.ratio * std::sqrt(static_cast<double>(last.t))));
}

TEST_CASE("growth ratio at the window edge, larger size") {
  const int n = 64;
  auto res = hk::simulate(hk::make_dumbbell_chain<double>(n), n * n / 8, true);
  auto pts = hk::exploratory_growth(res.trajectory, n);
  REQUIRE(pts.back().t == n * n / 8);
  REQUIRE(pts.back().ratio >= 1.0);
  REQUIRE(pts.back().ratio <= 3.0);
}

TEST_CASE("gap and growth CSV layouts") {
  const int n = 4;
  Config<Rat> c = hk::make_dumbbell_chain<Rat>(n);
  std::vector<hk::GapVector<Rat>> ys = {hk::gaps_from_state(c, n, 0)};
  std::ostringstream gaps;
  hk::write_gap_csv(gaps, ys);
  std::istringstream lines(gaps.str());
  std::string line;
  REQUIRE(std::getline(lines, line));
  REQUIRE(line == "t,i,y,delta");
  REQUIRE(std::getline(lines, line));
  REQUIRE(line == "0,0,1/4,0");

  std::ostringstream growth;
  hk::write_growth_csv(growth, {{4, 3.5, 1.75}});
  REQUIRE(growth.str() == "t,delta1,ratio\n4,3.5,1.75\n");
}
