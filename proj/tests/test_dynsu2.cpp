#include <algorithm>
#include <random>

#include "doctest.h"
#include "pcqg/antipode.hpp"
#include "pcqg/dynsu2.hpp"

using namespace pcqg;

namespace {

double max_residual(const std::vector<RelationResidual>& rs) {
  double m = 0;
  for (const auto& r : rs) m = std::max(m, r.residual);
  return m;
}

const RelationResidual& find_label(const std::vector<RelationResidual>& rs, const std::string& label) {
  auto it = std::find_if(rs.begin(), rs.end(), [&](const RelationResidual& r) { return r.label == label; });
  REQUIRE(it != rs.end());
  return *it;
}

}  // namespace

TEST_CASE("pi_c relation suite at q = 0.5, c = 0, x = 1") {
  auto rep = build_pi_c({0.5, 1.0, 0.0}, 10);
  auto rs = verify_dynsu2_relations(rep);
  CHECK(rs.size() == 14);
  CHECK(max_residual(rs) < 1e-11);
  auto row = find_label(rs, "alpha alpha* + beta beta* = 1");
  CHECK(row.residual < 1e-12);
}

TEST_CASE("pi_c needs |c| < 2") {
  CHECK_THROWS_AS(build_pi_c({0.5, 1.0, 2.0}, 5), std::domain_error);
  CHECK_THROWS_AS(build_pi_c({0.5, 1.0, -2.0}, 5), std::domain_error);
}

TEST_CASE("generator norms are at most 1") {
  for (double x : {1.0, 0.7})
    for (double c : {0.0, 1.5, -1.9}) {
      auto n = generator_norms(build_pi_c({0.5, x, c}, 10));
      for (double v : n) CHECK(v <= 1 + 1e-12);
    }
}

TEST_CASE("flipping the sign of beta breaks the mixed relation") {
  auto rep = build_pi_c({0.5, 1.0, 0.0}, 10);
  rep.gens[1] = scale(-1.0, rep.gens[1]);
  auto rs = verify_dynsu2_relations(rep);
  CHECK(find_label(rs, "alpha gamma* = -beta delta*").residual > 0.1);
}

TEST_CASE("single-entry faults are detected") {
  auto base = build_pi_c({0.5, 0.7, 1.5}, 10);
  std::mt19937 rng(11);
  for (int g = 0; g < 4; ++g) {
    std::vector<std::pair<int, int>> entries;
    for (int k = 0; k < base.gens[g].m.outerSize(); ++k)
      for (SpMat::InnerIterator it(base.gens[g].m, k); it; ++it)
        if (base.window.interior(it.row(), 3) && base.window.interior(it.col(), 3))
          entries.push_back({static_cast<int>(it.row()), static_cast<int>(it.col())});
    REQUIRE_FALSE(entries.empty());
    std::shuffle(entries.begin(), entries.end(), rng);
    for (int t = 0; t < 4; ++t) {
      auto rep = base;
      rep.gens[g].m.coeffRef(entries[t].first, entries[t].second) += 1e-3;
      INFO("generator " << g << " entry " << entries[t].first << "," << entries[t].second);
      CHECK(max_residual(verify_dynsu2_relations(rep)) > 1e-4);
    }
  }
}

TEST_CASE("coproduct images") {
  auto b1 = build_pi_c({0.5, 1.0, 0.0}, 5);
  auto b2 = build_pi_c({0.5, 1.0, 1.0}, 5);
  auto cr = coproduct_compat_check(b1, b2);
  CHECK(all_pass(cr.relations));
  CHECK(cr.support_identity.pass());
  for (double v : cr.norms) CHECK(v <= 1 + 1e-12);
  // negative controls
  CHECK_FALSE(cr.unrestricted_identity.pass());
  CHECK_FALSE(all_pass(cr.unmatched_relations));
}

TEST_CASE("antipode") {
  auto rep = build_pi_c({0.5, 1.0, 0.0}, 10);
  auto a = antipode_check(rep);
  CHECK(all_pass(a.transformed));
  CHECK(all_pass(a.corep));
  CHECK(all_pass(a.square));
  CHECK_FALSE(all_pass(a.literal_swap));
}

TEST_CASE("x to 1/x symmetry") {
  for (double x : {1.0, 0.7}) {
    auto b1 = build_pi_c({0.5, x, 0.3}, 10);
    auto b2 = build_pi_c({0.5, 1 / x, 0.3}, 10);
    CHECK(all_pass(x_symmetry_check(b1, b2)));
  }
}

TEST_CASE("generators shift the weights") {
  auto rep = build_pi_c({0.3, 0.7, -1.2}, 6);
  CHECK(shift_grading_check(rep).residual < 1e-14);
}
