#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "hk/walks.hpp"

using hk::Rat;
using hk::rat;

TEST_CASE("path walk matrix") {
  auto P = hk::path_matrix(2);
  REQUIRE(P.at(0, 0) == rat(2, 3));
  REQUIRE(P.at(0, 1) == rat(1, 3));
  REQUIRE(P.at(1, 0) == rat(1, 3));
  REQUIRE(P.at(1, 1) == rat(2, 3));
  auto Q = hk::path_matrix(3);
  REQUIRE(Q.at(1, 0) == rat(1, 3));
  REQUIRE(Q.at(1, 1) == rat(1, 3));
  REQUIRE(Q.at(1, 2) == rat(1, 3));
  for (int n : {2, 5, 9}) {
    auto M = hk::path_matrix(n);
    for (int i = 0; i < n; ++i) {
      Rat sum = 0;
      for (int j = 0; j < n; ++j) sum += M.at(i, j);
      REQUIRE(sum == Rat(1));
    }
  }
  REQUIRE_THROWS_AS(hk::path_matrix(1), std::invalid_argument);
}

TEST_CASE("cycle walk matrix") {
  auto C = hk::cycle_matrix(2);
  REQUIRE(C.size == 4);
  REQUIRE(C.at(0, 0) == rat(1, 3));
  REQUIRE(C.at(0, 1) == rat(1, 3));
  REQUIRE(C.at(0, 2) == Rat(0));
  REQUIRE(C.at(0, 3) == rat(1, 3));
  for (int n : {2, 4, 7}) {
    auto M = hk::cycle_matrix(n);
    for (int i = 0; i < M.size; ++i) {
      Rat sum = 0;
      for (int j = 0; j < M.size; ++j) {
        sum += M.at(i, j);
        REQUIRE(M.at(i, j) == M.at(j, i));
      }
      REQUIRE(sum == Rat(1));
    }
  }
  REQUIRE_THROWS_AS(hk::cycle_matrix(1), std::invalid_argument);
}

TEST_CASE("folding the cycle in half gives the path walk") {
  for (int n : {2, 3, 5, 8}) {
    auto folded = hk::fold_cycle_to_path(n);
    auto P = hk::path_matrix(n);
    REQUIRE(folded.p == P.p);
  }
}

TEST_CASE("expected visit counts, small cases") {
  auto P = hk::path_matrix(2);
  auto h0 = hk::expected_hits(P, 0, 0);
  REQUIRE(h0.h == std::vector<Rat>{Rat(1), Rat(0)});
  auto h1 = hk::expected_hits(P, 0, 1);
  REQUIRE(h1.h[0] == rat(5, 3));
  REQUIRE(h1.h[1] == rat(1, 3));
  REQUIRE_THROWS_AS(hk::expected_hits(P, 2, 1), std::out_of_range);
  REQUIRE_THROWS_AS(hk::expected_hits(P, 0, -1), std::invalid_argument);
}

TEST_CASE("one-step visit counts enumerate the transition row") {
  auto P = hk::path_matrix(4);
  for (int i = 0; i < 4; ++i) {
    auto h = hk::expected_hits(P, i, 1);
    for (int j = 0; j < 4; ++j) REQUIRE(h.h[j] == (i == j ? Rat(1) : Rat(0)) + P.at(i, j));
  }
}

TEST_CASE("visit counts are entrywise nondecreasing in the horizon") {
  auto P = hk::path_matrix(5);
  auto prev = hk::expected_hits(P, 0, 0);
  for (long long t = 1; t <= 12; ++t) {
    auto cur = hk::expected_hits(P, 0, t);
    for (int j = 0; j < 5; ++j) REQUIRE(cur.h[j] >= prev.h[j]);
    prev = cur;
  }
}

TEST_CASE("monte carlo estimator is deterministic and close to exact") {
  auto P = hk::path_matrix(3);
  REQUIRE(hk::mc_hits(P, 1, 1, 0, 50, 9) == 1.0);
  REQUIRE(hk::mc_hits(P, 1, 0, 0, 50, 9) == 0.0);
  const double a = hk::mc_hits(P, 0, 0, 10, 20000, 42);
  const double b = hk::mc_hits(P, 0, 0, 10, 20000, 42);
  REQUIRE(a == b);
  const double exact = hk::expected_hits(P, 0, 10).h[0].get_d();
  REQUIRE(std::abs(a - exact) < 0.05);
  REQUIRE_THROWS_AS(hk::mc_hits(P, 0, 0, 1, 0, 1), std::invalid_argument);
}

TEST_CASE("return probability of the cycle walk") {
  REQUIRE(hk::return_probability(3, 0) == Rat(1));
  REQUIRE(hk::return_probability(3, 1) == rat(1, 3));
  for (int n : {5, 10}) {
    double best = 0;
    for (long long t = 1; t <= static_cast<long long>(n) * n; ++t)
      best = std::max(best,
                      hk::return_probability(n, t).get_d() * std::sqrt(static_cast<double>(t)));
    REQUIRE(best <= 2.0);
  }
}

TEST_CASE("folding identity holds through the horizon") {
  auto rep = hk::folding_identity(3, 25);
  REQUIRE(rep.identity_ok);
  REQUIRE(rep.inequality_ok);
  REQUIRE(rep.first_violation_t == -1);
}

TEST_CASE("binomial shift ratios") {
  auto res = hk::binomial_decay(400, 5);
  REQUIRE(res.kappa == rat(1, 3));  // attained at m=3
  REQUIRE(res.argmax_m == 3);
  REQUIRE(res.less_than_one);
  REQUIRE(res.inequality_ok);
  REQUIRE(res.tail_ok);
  REQUIRE(res.decay_threshold >= 2);
  REQUIRE_THROWS_AS(hk::binomial_decay(1, 5), std::invalid_argument);
  REQUIRE_THROWS_AS(hk::binomial_decay(10, 0), std::invalid_argument);
}

TEST_CASE("single binomial ratio spot checks") {
  REQUIRE(Rat(hk::binomial(4, 4)) / Rat(hk::binomial(4, 2)) == rat(1, 6));
  REQUIRE(hk::binomial(5, 7) == hk::Int(0));
  REQUIRE(hk::isqrt_ceil(3) == 2);
  REQUIRE(hk::isqrt_ceil(4) == 2);
  REQUIRE(hk::isqrt_ceil(5) == 3);
}

TEST_CASE("kick recursion basics") {
  const Rat kappa = 2;
  auto states = hk::delta_recurrence(6, kappa, 30);
  REQUIRE(states.size() == 31);
  for (const Rat& v : states[0].delta) REQUIRE(v == Rat(0));
  REQUIRE(states[1].delta == std::vector<Rat>{kappa, Rat(0), Rat(0), Rat(0), Rat(0), kappa});
  for (const auto& st : states) {
    for (int i = 0; i < 6; ++i) REQUIRE(st.delta[i] == st.delta[5 - i]);
    for (int i = 0; i + 1 < 3; ++i) REQUIRE(st.delta[i] >= st.delta[i + 1]);
  }
  REQUIRE_THROWS_AS(hk::delta_recurrence(1, kappa, 5), std::invalid_argument);
  REQUIRE_THROWS_AS(hk::delta_recurrence(4, Rat(0), 5), std::invalid_argument);
}

TEST_CASE("recursion equals its matrix form") {
  const int n = 5;
  const Rat kappa = rat(3, 2);
  auto P = hk::path_matrix(n);
  auto states = hk::delta_recurrence(n, kappa, 20);
  for (size_t t = 0; t + 1 < states.size(); ++t) {
    std::vector<Rat> expect(n, Rat(0));
    expect[0] = kappa;
    expect[n - 1] += kappa;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) expect[i] += P.at(i, j) * states[t].delta[j];
    REQUIRE(states[t + 1].delta == expect);
  }
}

TEST_CASE("closed form: linearity and agreement") {
  const int n = 4;
  auto states = hk::delta_recurrence(n, Rat(1), 20);
  for (long long t = 1; t <= 20; ++t) {
    auto one = hk::delta_closed_form(n, Rat(1), t);
    auto two = hk::delta_closed_form(n, Rat(2), t);
    REQUIRE(one == states[static_cast<size_t>(t)].delta);
    for (int i = 0; i < n; ++i) REQUIRE(two[i] == Rat(2) * one[i]);
  }
  REQUIRE_THROWS_AS(hk::delta_closed_form(4, Rat(1), 0), std::invalid_argument);
}

TEST_CASE("visit-count expression for the first coordinate") {
  REQUIRE(hk::delta_first_from_hits(5, Rat(2), 1) == Rat(2));
  for (int n : {3, 6}) {
    auto states = hk::delta_recurrence(n, Rat(2), 15);
    for (long long t = 1; t <= 15; ++t)
      REQUIRE(states[static_cast<size_t>(t)].delta[0] == hk::delta_first_from_hits(n, Rat(2), t));
  }
}

TEST_CASE("walk CSV layouts") {
  std::ostringstream hits;
  hk::write_hits_csv(hits, 2, 1);
  std::istringstream hl(hits.str());
  std::string line;
  REQUIRE(std::getline(hl, line));
  REQUIRE(line == "t,h11,sqrt_t,ratio");
  REQUIRE(std::getline(hl, line));
  REQUIRE(line.rfind("1,5/3,1,", 0) == 0);

  std::ostringstream q;
  hk::write_return_csv(q, 2, 1);
  std::istringstream ql(q.str());
  REQUIRE(std::getline(ql, line));
  REQUIRE(line == "t,q,sqrt_t,ratio");
  REQUIRE(std::getline(ql, line));
  REQUIRE(line.rfind("1,1/3,1,", 0) == 0);

  std::ostringstream d;
  hk::write_delta_csv(d, hk::delta_recurrence(2, Rat(1), 1));
  REQUIRE(d.str() == "t,i,delta\n0,1,0\n0,2,0\n1,1,1\n1,2,1\n");
}
