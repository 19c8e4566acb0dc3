#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "pcqg/uqsu11.hpp"

using namespace pcqg;

namespace {

bool has_set(const std::vector<CompatibleSet>& v, CSetKind kind, double z) {
  return std::any_of(v.begin(), v.end(),
                     [&](const CompatibleSet& c) { return c.desc.kind == kind && std::abs(c.desc.z - z) < 1e-12; });
}

}  // namespace

TEST_CASE("compatible sets at c = -4.25") {
  auto v = compatible_sets(1.0, -4.25, 0.5);
  CHECK(v.size() == 2);
  CHECK(has_set(v, CSetKind::PlusSeries, 0.125));
  CHECK(has_set(v, CSetKind::MinusSeries, 8.0));
}

TEST_CASE("compatible sets at c = 0 are the two orbit representatives") {
  auto v = compatible_sets(1.0, 0.0, 0.5);
  CHECK(v.size() == 2);
  CHECK(has_set(v, CSetKind::FullOrbit, 0.5));
  CHECK(has_set(v, CSetKind::FullOrbit, 1.0));
}

TEST_CASE("trivial set excluded when 1 is off the lattice") {
  auto v = compatible_sets(std::sqrt(0.3), -2.5, 0.5);
  for (const auto& cs : v) CHECK(cs.desc.kind != CSetKind::Trivial);
}

TEST_CASE("trivial representation has Casimir -tau(q)") {
  auto v = compatible_sets(1.0, -2.5, 0.5);
  auto it = std::find_if(v.begin(), v.end(), [](const CompatibleSet& c) { return c.desc.kind == CSetKind::Trivial; });
  REQUIRE(it != v.end());
  auto rep = build_pi_T(*it);
  REQUIRE(rep.window.size() == 1);
  CHECK(std::abs(casimir_op(rep).entry(0, 0) - (-2.5)) < 1e-14);
  CHECK(casimir_scalarity(rep).pass());
}

TEST_CASE("relations and Casimir on every compatible set") {
  for (double y : {1.0, 0.7})
    for (double c : {0.0, 1.3, -2.0, -2.5, -4.25}) {
      for (const auto& cs : compatible_sets(y, c, 0.5)) {
        auto rep = build_pi_T(cs);
        INFO("y=" << y << " c=" << c << " " << cs.desc.label);
        CHECK(all_pass(verify_uqsu11_relations(rep)));
        CHECK(casimir_scalarity(rep).pass());
      }
    }
}

TEST_CASE("Casimir fault injection") {
  auto v = compatible_sets(1.0, 0.0, 0.5);
  REQUIRE_FALSE(v.empty());
  auto rep = build_pi_T_with_casimir(v[0], 24, 1e-3);
  auto r = casimir_scalarity(rep);
  CHECK_FALSE(r.pass());
  CHECK(r.abs_residual > 1e-4);
  CHECK(r.abs_residual < 1e-2);
}

TEST_CASE("identity substitution breaks the commutator relation") {
  auto v = compatible_sets(1.0, 0.0, 0.5);
  auto rep = build_pi_T(v[0]);
  rep.E = rep.F = rep.K = rep.Kinv = WindowedOperator::identity(rep.window);
  CHECK_FALSE(all_pass(verify_uqsu11_relations(rep)));
}
