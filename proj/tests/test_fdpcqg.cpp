#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "pcqg/fdpcqg.hpp"

using namespace pcqg;

namespace {

int nonzero_units(const FinitePQG& G) {
  int n = 0;
  for (int k = 0; k < G.n_obj(); ++k)
    for (int l = 0; l < G.n_obj(); ++l) n += G.unit_nonzero(k, l);
  return n;
}

double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("function algebra of the pair groupoid") {
  auto G = from_finite_groupoid_functions(pair_groupoid(2));
  CHECK(G.dim() == 4);
  CHECK(nonzero_units(G) == 4);
  for (const auto& u : G.units) CHECK(u.sum() == doctest::Approx(1.0));
}

TEST_CASE("function algebra of Z/2 has the dual group law") {
  auto g = cyclic_group(2);
  auto G = from_finite_groupoid_functions(g);
  CHECK(G.dim() == 2);
  for (int a = 0; a < 2; ++a) {
    Vec d = G.delta(G.e(a));
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) CHECK(d(x * 2 + y) == (g.compose[x][y] == a ? 1.0 : 0.0));
  }
}

TEST_CASE("disjoint union has no cross units") {
  auto g = disjoint_union(pair_groupoid(2), cyclic_group(2));
  auto G = from_finite_groupoid_functions(g);
  CHECK(G.dim() == 6);
  CHECK(G.n_obj() == 3);
  CHECK(nonzero_units(G) == 5);
  for (int k : {0, 1}) {
    CHECK_FALSE(G.unit_nonzero(k, 2));
    CHECK_FALSE(G.unit_nonzero(2, k));
  }
}

TEST_CASE("groupoid algebra forms") {
  auto z2 = from_finite_groupoid_algebra(cyclic_group(2));
  CHECK(z2.dim() == 2);
  for (int a = 0; a < 2; ++a) {
    Vec d = z2.delta(z2.e(a));
    Vec expect = Vec::Zero(4);
    expect(a * 2 + a) = 1;
    CHECK(max_abs(d - expect) == 0.0);
  }
  auto pair = from_finite_groupoid_algebra(pair_groupoid(2));
  CHECK(pair.dim() == 4);
  CHECK(nonzero_units(pair) == 2);
  CHECK(pair.unit_nonzero(0, 0));
  CHECK(pair.unit_nonzero(1, 1));
  CHECK(from_finite_groupoid_algebra(trivial_group()).dim() == 1);
}

TEST_CASE("malformed groupoids are rejected") {
  auto g = cyclic_group(3);
  g.inverse[1] = 1;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  auto h = cyclic_group(3);
  std::swap(h.compose[1][1], h.compose[1][2]);
  CHECK_THROWS_AS(h.validate(), std::invalid_argument);
}

TEST_CASE("groupoid JSON round trip") {
  auto g = product_groupoid(symmetric_group3(), pair_groupoid(2));
  auto back = groupoid_from_json(to_json(g));
  CHECK(back.compose == g.compose);
  CHECK(back.inverse == g.inverse);
  auto G = from_finite_groupoid_functions(g);
  auto H = FinitePQG::from_json(G.to_json());
  CHECK(H.to_json() == G.to_json());
}

TEST_CASE("all library groupoid instances pass every axiom") {
  for (const auto& inst : instance_library()) {
    if (!inst.groupoid) continue;
    auto ax = verify_axioms(inst.G);
    INFO(inst.name);
    CHECK(ax.all_pass());
    CHECK(ax.equivalence());
  }
}

TEST_CASE("Raum instance fails exactly D2") {
  auto G = from_category_functions(raum_category());
  auto ax = verify_axioms(G);
  CHECK(ax.failing() == std::vector<std::string>{"D2"});
  CHECK_FALSE(ax.get("D2").witness.empty());
  // 1^2_1 = 0 while 1^1_2 != 0: the relation is not symmetric
  CHECK_FALSE(ax.symmetric);
}

TEST_CASE("Haar family of C(Z/2) is uniform") {
  auto G = from_finite_groupoid_functions(cyclic_group(2));
  auto h = haar_linear_solve(G);
  REQUIRE(h.ok());
  CHECK((*h.phi[0])(0) == doctest::Approx(0.5));
  CHECK((*h.phi[0])(1) == doctest::Approx(0.5));
}

TEST_CASE("Haar state of the Z/2 group algebra is evaluation at the unit") {
  auto g = cyclic_group(2);
  auto G = from_finite_groupoid_algebra(g);
  auto h = haar_cesaro(G);
  REQUIRE(h.ok());
  int e = g.identity[0];
  for (int a = 0; a < 2; ++a) CHECK((*h.phi[0])(a) == doctest::Approx(a == e ? 1.0 : 0.0));
}

TEST_CASE("Haar family of the pair groupoid is evaluation at the unique arrow") {
  auto g = pair_groupoid(2);
  auto G = from_finite_groupoid_functions(g);
  auto h = haar_linear_solve(G);
  REQUIRE(h.ok());
  for (int a = 0; a < 4; ++a) {
    const auto& phi = *h.phi[g.arrows[a].src * 2 + g.arrows[a].tgt];
    for (int b = 0; b < 4; ++b) CHECK(phi(b) == doctest::Approx(a == b ? 1.0 : 0.0));
  }
}

TEST_CASE("Haar: Cesaro and linear solve agree, left equals right") {
  for (const auto& inst : instance_library()) {
    if (!inst.groupoid) continue;
    INFO(inst.name);
    auto hc = haar_cesaro(inst.G);
    auto hl = haar_linear_solve(inst.G);
    REQUIRE(hc.ok());
    REQUIRE(hl.ok());
    CHECK(family_distance(hc, hl) < 1e-8);
    CHECK(hl.left_right_gap < 1e-10);
    CHECK(hc.i1_residual < 1e-10);
    CHECK(hc.invariance_residual < 1e-10);
    if (inst.commutative_groupoid) {
      HaarFamily oracle;
      oracle.phi = uniform_haar_oracle(*inst.groupoid);
      CHECK(family_distance(oracle, hl) < 1e-10);
    }
  }
}

TEST_CASE("Cesaro from random seed states converges to the same family") {
  auto G = from_finite_groupoid_functions(product_groupoid(symmetric_group3(), pair_groupoid(2)));
  CesaroOptions opt;
  opt.random_seed_states = true;
  opt.seed = 5;
  auto hr = haar_cesaro(G, opt);
  REQUIRE(hr.ok());
  CHECK(family_distance(hr, haar_linear_solve(G)) < 1e-8);
}

TEST_CASE("Raum instance has no Haar family") {
  auto G = from_category_functions(raum_category());
  auto hl = haar_linear_solve(G);
  CHECK(hl.status == "no solution");
  CHECK_FALSE(hl.ok());
  CHECK_FALSE(haar_cesaro(G).ok());
}

TEST_CASE("convolution grading") {
  auto G = from_finite_groupoid_functions(pair_groupoid(2));
  auto a = trace_state(G, 0, 1);
  auto b = trace_state(G, 1, 0);
  auto ab = convolve(G, a, b);
  CHECK_FALSE(ab.zero);
  CHECK(ab.k == 0);
  CHECK(ab.m == 0);
  CHECK(ab.l == 0);
  CHECK(ab.n == 0);
  auto mismatched = convolve(G, a, a);
  CHECK(mismatched.zero);
}

TEST_CASE("convolution grading over all basis functional pairs") {
  auto G = from_finite_groupoid_functions(disjoint_union(pair_groupoid(2), cyclic_group(2)));
  const int n = G.n_obj();
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m)
      for (int m2 = 0; m2 < n; ++m2)
        for (int p = 0; p < n; ++p) {
          if (!G.unit_nonzero(k, m) || !G.unit_nonzero(m2, p)) continue;
          auto chi = trace_state(G, k, m);
          auto om = trace_state(G, m2, p);
          auto r = convolve(G, chi, om);
          if (m != m2) {
            CHECK(r.zero);
          } else if (!r.zero) {
            CHECK(r.k == k);
            CHECK(r.m == p);
            CHECK(support_defect(G, r) < 1e-12);
          }
        }
}

TEST_CASE("Haar states are idempotent under convolution") {
  for (const auto& inst : instance_library()) {
    if (!inst.groupoid) continue;
    auto h = haar_linear_solve(inst.G);
    const int n = inst.G.n_obj();
    for (int k = 0; k < n; ++k) {
      GradedFunctional f{*h.phi[k * n + k], k, k, k, k, false};
      auto ff = convolve(inst.G, f, f);
      CHECK(max_abs(ff.w - f.w) < 1e-10);
    }
  }
}

TEST_CASE("trivial representation") {
  for (const auto& inst : instance_library()) {
    auto E = trivial_rep(inst.G);
    INFO(inst.name);
    CHECK(verify_rep(inst.G, E).pass());
    auto EE = tensor_reps(inst.G, E, E);
    CHECK(rep_distance(E, EE) < 1e-12);
  }
  auto T = from_finite_groupoid_functions(trivial_group());
  auto E = trivial_rep(T);
  REQUIRE(E.dim() == 1);
  CHECK(max_abs(E.at(0, 0) - T.one()) == 0.0);
}

TEST_CASE("groupoid representations on the function algebra") {
  auto z2 = cyclic_group(2);
  CHECK(groupoid_rep_defect(z2, sign_rep_z2()) < 1e-14);
  auto Gz2 = from_finite_groupoid_functions(z2);
  CHECK(verify_rep(Gz2, groupoid_rep_functions(z2, sign_rep_z2())).pass());

  auto s3p = product_groupoid(symmetric_group3(), pair_groupoid(2));
  auto std2 = standard_rep_s3_pair(s3p);
  CHECK(groupoid_rep_defect(s3p, std2) < 1e-12);
  auto G = from_finite_groupoid_functions(s3p);
  auto X = groupoid_rep_functions(s3p, std2);
  CHECK(verify_rep(G, X).pass());
  auto E = trivial_rep(G);
  CHECK(verify_rep(G, tensor_reps(G, X, E)).pass());
  CHECK(verify_rep(G, tensor_reps(G, X, X)).pass());
}

TEST_CASE("tensor product is associative") {
  auto s3p = product_groupoid(symmetric_group3(), pair_groupoid(2));
  auto G = from_finite_groupoid_functions(s3p);
  auto X = groupoid_rep_functions(s3p, standard_rep_s3_pair(s3p));
  auto Y = groupoid_rep_functions(s3p, trivial_groupoid_rep(s3p));
  auto E = trivial_rep(G);
  auto l = tensor_reps(G, tensor_reps(G, X, Y), E);
  auto r = tensor_reps(G, X, tensor_reps(G, Y, E));
  CHECK(rep_distance(l, r) < 1e-12);
}

TEST_CASE("corrupted block coefficient violates the support condition") {
  auto s3p = product_groupoid(symmetric_group3(), pair_groupoid(2));
  auto G = from_finite_groupoid_functions(s3p);
  auto X = groupoid_rep_functions(s3p, standard_rep_s3_pair(s3p));
  // move weight of the block between objects 0 and 0 onto an arrow between other objects
  int foreign = -1;
  for (int a = 0; a < static_cast<int>(s3p.arrows.size()); ++a)
    if (s3p.arrows[a].src != X.row[0] || s3p.arrows[a].tgt != X.col[0]) foreign = a;
  REQUIRE(foreign >= 0);
  X.at(0, 0)(foreign) += 0.5;
  auto rep = verify_rep(G, X);
  CHECK(rep.co2 > 1e-3);
  CHECK_FALSE(rep.pass());
}
