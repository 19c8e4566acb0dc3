#include "doctest.h"
#include "pcqg/rewrite.hpp"
#include "random_words.hpp"

using namespace pcqg;

TEST_CASE("alpha is already normal") {
  auto r = reduce_word(parse_word("a"), 0.5);
  REQUIRE(r.size() == 1);
  CHECK(r[0].letters == std::vector<Letter>{alpha_l()});
  CHECK(r[0].f.str() == CoefFn::constant(1).str());
}

TEST_CASE("alpha* becomes a multiple of delta") {
  auto r = reduce_word(parse_word("a'"), 0.5);
  REQUIRE(r.size() == 1);
  CHECK(r[0].letters == std::vector<Letter>{delta_l()});
  // the function acts first, so w_+^(1/2)(lam) / w_+^(1/2)(rho) in front of delta appears shifted
  CHECK(r[0].f.str() == (CoefFn::w_lam(+1, 1) * CoefFn::w_rho(+1, -1)).shifted(-1, -1).str());
  auto rep = build_pi_c({0.5, 1.0, 0.4}, 10);
  CHECK(reduction_residual(rep, parse_word("a'"), r).pass());
}

TEST_CASE("parser rejects unknown letters") { CHECK_THROWS_AS(parse_word("ax"), std::invalid_argument); }

TEST_CASE("length bound is enforced") {
  ReduceOptions opt;
  opt.max_length = 3;
  CHECK_THROWS_AS(reduce_word(parse_word("abgd"), 0.5, opt), RewriteError);
}

TEST_CASE("random words reduce soundly and idempotently") {
  const double q = 0.5;
  auto rep0 = build_pi_c({q, 1.0, 0.0}, 10);
  auto rep1 = build_pi_c({q, 1.0, 1.3}, 10);
  std::mt19937 rng(2024);
  for (int i = 0; i < 500; ++i) {
    std::string s = random_word(rng);
    INFO(s);
    auto w = parse_word(s);
    auto red = reduce_word(w, q);
    for (const auto& t : red) CHECK(is_normal(t.letters));
    CHECK(reduction_residual(rep0, w, red).residual < 1e-9);
    CHECK(reduction_residual(rep1, w, red).residual < 1e-9);
    CHECK(same_normal_form(reduce_expr(to_expr(red), q), red));
  }
}
