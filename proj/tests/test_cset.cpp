#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "pcqg/cset.hpp"

using namespace pcqg;

TEST_CASE("adaptedness at and around the boundary") {
  for (int eps : {-1, 1}) CHECK(is_adapted(1.0, 0.0, eps, true, 0.5));
  CHECK(is_adapted(1.0, -2.5, +1, false, 0.5));
  CHECK_FALSE(is_adapted(1.0, -2.5, +1, true, 0.5));
  CHECK_FALSE(is_adapted(1.0, -3.0, +1, false, 0.5));
}

TEST_CASE("solve_wc") {
  CHECK(solve_wc(-2.0).w_c == doctest::Approx(1.0));
  CHECK(solve_wc(-2.5).w_c == doctest::Approx(0.5));
  CHECK(solve_wc(-4.25).w_c == doctest::Approx(0.25));
}

TEST_CASE("brute force: half-infinite set at c = -4.25") {
  auto sets = brute_force_csets(-4.25, 0.5, 10, 0.125);
  auto it = std::find_if(sets.begin(), sets.end(), [](const WindowSet& s) {
    return std::find(s.ks.begin(), s.ks.end(), 0L) != s.ks.end();
  });
  REQUIRE(it != sets.end());
  std::vector<long> expect;
  for (long k = 0; k <= 10; ++k) expect.push_back(k);
  CHECK(it->ks == expect);
  CHECK(it->window_limited);
}

TEST_CASE("brute force: full orbit at c = 0") {
  auto sets = brute_force_csets(0.0, 0.5, 10, 1.0);
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].ks.size() == 21);
  CHECK(sets[0].window_limited);
}

TEST_CASE("brute force: boundary isolates 1 at c = -2.5") {
  auto sets = brute_force_csets(-2.5, 0.5, 10, 1.0);
  auto it = std::find_if(sets.begin(), sets.end(), [](const WindowSet& s) {
    return std::find(s.ks.begin(), s.ks.end(), 0L) != s.ks.end();
  });
  REQUIRE(it != sets.end());
  CHECK(it->ks == std::vector<long>{0});
  CHECK_FALSE(it->window_limited);
}

TEST_CASE("classifier matches brute force on representative c values") {
  for (double q : {0.3, 0.5, 0.8})
    for (double c : {-6.0, -4.25, -2.5, -2.0, -1.0, 0.0, 2.0, 3.7})
      for (double anchor : {1.0, q, std::pow(q, 0.37)}) {
        auto cmp = compare_csets(c, q, 12, anchor);
        INFO("q=" << q << " c=" << c << " anchor=" << anchor);
        CHECK(cmp.match);
      }
}

TEST_CASE("c grid contains the exceptional points") {
  double q = 0.5;
  auto g = cset_c_grid(q, 200, 12);
  CHECK(g.size() >= 200);
  CHECK(std::is_sorted(g.begin(), g.end()));
  for (double c : {-2.0, 2.0, tau(q * q), -tau(std::pow(q, 3.5))}) {
    bool found = std::any_of(g.begin(), g.end(), [&](double v) { return std::abs(v - c) < 1e-12; });
    CHECK(found);
  }
}
