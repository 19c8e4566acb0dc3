#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "pcqg/decoupling.hpp"
#include "pcqg/spectrum.hpp"

using namespace pcqg;

TEST_CASE("Phi images on pi_c") {
  for (double x : {1.0, 0.7}) {
    auto rep = build_pi_c({0.5, x, 0.0}, 10);
    auto im = build_phi_images(rep);
    CHECK(all_pass(verify_phi_relations(im)));
    auto om = casimir_omega(im);
    CHECK(all_pass(om.checks));
    CHECK(om.scalar.pass());
    CHECK(all_pass(phi_inverse_roundtrip(im)));
  }
}

TEST_CASE("Omega has bandwidth at most two shifts") {
  auto rep = build_pi_c({0.5, 1.0, 0.3}, 8);
  auto om = casimir_omega(build_phi_images(rep));
  for (int s : om.omega.measured_shift()) CHECK(s <= 2);
}

TEST_CASE("enumerate_irreps at c = -4.25") {
  double q = 0.5;
  auto pairs = enumerate_irreps(q, 1.0, -4.25);
  REQUIRE_FALSE(pairs.empty());
  for (const auto& p : pairs) {
    CHECK((p.S.desc.kind == CSetKind::PlusSeries || p.S.desc.kind == CSetKind::MinusSeries));
    CHECK(p.T.desc.kind == CSetKind::FullOrbit);
    auto e = LatticeSpec(q * q, 1.0, 1).contains(p.S.desc.z * p.T.desc.z);
    CHECK(e.has_value());
  }
}

TEST_CASE("enumerate_irreps at c = 0 pairs principal orbits") {
  auto pairs = enumerate_irreps(0.5, 1.0, 0.0);
  REQUIRE_FALSE(pairs.empty());
  for (const auto& p : pairs) {
    CHECK(p.S.desc.kind == CSetKind::FullOrbit);
    CHECK(p.T.desc.kind == CSetKind::FullOrbit);
  }
}

TEST_CASE("no irreducible pairs below c0 off the exceptional points") {
  CHECK(enumerate_irreps(0.5, 1.0, -3.0).empty());
  CHECK(enumerate_irreps(0.5, 1.0, 3.0).empty());
}

TEST_CASE("discrete pair bundle") {
  double q = 0.5;
  auto pairs = enumerate_irreps(q, 1.0, -4.25);
  auto it = std::find_if(pairs.begin(), pairs.end(), [&](const IrrepPair& p) {
    return p.S.desc.kind == CSetKind::PlusSeries && std::abs(p.S.desc.z - q * q * q) < 1e-12 &&
           std::abs(p.T.desc.z - q) < 1e-12;
  });
  REQUIRE(it != pairs.end());
  auto b = build_pi_ST(*it);
  CHECK(all_pass(verify_dynsu2_relations(b.rep, 1e-9)));
  auto om = casimir_omega(build_phi_images(b.rep));
  CHECK(om.scalar.pass());
  CHECK(all_pass(pi_ST_roundtrip(b)));
  for (double v : generator_norms(b.rep)) CHECK(v <= 1 + 1e-12);
  // lam rho = r^2, lam / rho = s^2
  for (std::size_t i = 0; i < b.rep.window.size(); ++i) {
    double r = b.rep.window.value(i, 0), s = b.rep.window.value(i, 1);
    CHECK(b.rep.lam[i] * b.rep.rho[i] == doctest::Approx(r * r));
    CHECK(b.rep.lam[i] / b.rep.rho[i] == doctest::Approx(s * s));
  }
}

TEST_CASE("build_pi_ST rejects pairs violating the conditions") {
  auto S = compatible_sets(1.0, 0.0, 0.5);
  REQUIRE(S.size() == 2);
  // z = 0.5 and z = 1 on the two sides: product off x^2 q^{2Z}
  auto odd = std::find_if(S.begin(), S.end(), [](const CompatibleSet& c) { return c.z_exp % 2 != 0; });
  auto even = std::find_if(S.begin(), S.end(), [](const CompatibleSet& c) { return c.z_exp % 2 == 0; });
  REQUIRE(odd != S.end());
  REQUIRE(even != S.end());
  CHECK_THROWS_AS(build_pi_ST({*odd, *even}), std::invalid_argument);
  CHECK_NOTHROW(build_pi_ST({*odd, *odd}));
  auto S1 = compatible_sets(1.0, 1.0, 0.5);
  CHECK_THROWS_AS(build_pi_ST({S1[0], S1[0]}), std::invalid_argument);
}

TEST_CASE("closed-form spectrum") {
  auto sd = spec_omega_closed_form(0.5, 1.0);
  CHECK(sd.k0 == 0);
  CHECK(sd.c0 == doctest::Approx(-2.5));
  CHECK(sd.right == doctest::Approx(2.5));
  CHECK_FALSE(sd.contains(3.0));
  CHECK(sd.contains(4.25));
  CHECK_FALSE(sd.contains(-2.6));
  CHECK(sd.contains(-4.25));

  auto sd2 = spec_omega_closed_form(0.5, std::sqrt(0.7));
  CHECK(sd2.k0 == 0);
  CHECK(sd2.c0 == doctest::Approx(-std::max(tau(1.4), tau(0.7))));
  CHECK(sd2.c0 == doctest::Approx(-2.128571428571));
  for (double q : {0.3, 0.5, 0.8})
    for (double x : {1.0, 0.6, 1.7}) CHECK(spec_omega_closed_form(q, x).contains(q + 1 / q));
}

TEST_CASE("brute-force membership at the worked points") {
  std::vector<double> grid = {3.0, 4.25, -2.6, -2.5, 0.0, 2.5};
  auto b = spec_omega_brute_force(0.5, 1.0, grid);
  CHECK(b == std::vector<bool>{false, true, false, true, true, true});
}

TEST_CASE("closed form agrees with enumeration on a small grid") {
  for (double x : {1.0, 0.8}) {
    auto cmp = compare_spectrum(0.5, x, 60, 5);
    CHECK(cmp.mismatches.empty());
  }
}
