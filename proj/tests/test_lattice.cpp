#include <cmath>
#include <random>

#include "doctest.h"
#include "pcqg/lattice.hpp"
#include "pcqg/window.hpp"

using namespace pcqg;

TEST_CASE("tau values and inversion symmetry") {
  CHECK(tau(1.0) == doctest::Approx(2.0));
  CHECK(tau(0.5) == doctest::Approx(2.5));
  CHECK(tau(2.0) == doctest::Approx(tau(0.5)));
}

TEST_CASE("weight_w") {
  CHECK(weight_w(1.0, +1, 0.5) == doctest::Approx(1.25));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> logv(-4, 4);
  for (double q : {0.3, 0.5, 0.8})
    for (int i = 0; i < 50; ++i) {
      double v = std::exp(logv(rng));
      CHECK(std::abs(weight_w(v, +1, q) * tau(v) - tau(q * v)) < 1e-12 * tau(q * v));
      CHECK(std::abs(weight_w(v, -1, q) * tau(v) - tau(v / q)) < 1e-12 * tau(v / q));
    }
}

TEST_CASE("lattice membership") {
  LatticeSpec L(0.5, 1.0, 1), G(0.5, 1.0, 2);
  CHECK(L.contains(0.25) == 2L);
  CHECK_FALSE(L.contains(0.3).has_value());
  CHECK(G.contains(std::sqrt(0.5)) == 1L);
  CHECK_FALSE(L.contains(std::sqrt(0.5)).has_value());
}

TEST_CASE("lattice point round trip") {
  for (double q : {0.3, 0.5, 0.8})
    for (double base : {1.0, 0.7, 2.3})
      for (int step : {1, 2}) {
        LatticeSpec L(q, base, step);
        for (long n = -30; n <= 30; ++n) CHECK(L.contains(LatticePoint{L, n}.value()) == n);
      }
}

TEST_CASE("multiplication operator by tau") {
  Window w({centered_axis(0.5, 1.0, 1)});
  auto op = mul_op([](const std::vector<LatticePoint>& p) { return cplx(tau(p[0].value())); }, w);
  CHECK(std::abs(op.entry(0, 0) - 2.5) < 1e-14);
  CHECK(std::abs(op.entry(1, 1) - 2.0) < 1e-14);
  CHECK(std::abs(op.entry(2, 2) - 2.5) < 1e-14);
  CHECK(op.m.nonZeros() == 3);
}

TEST_CASE("unit function and Dirac function") {
  Window w({centered_axis(0.5, 1.0, 3), centered_axis(0.5, 1.0, 3)});
  auto one = mul_op([](const std::vector<LatticePoint>&) { return cplx(1); }, w);
  CHECK(op_norm_bound(one - WindowedOperator::identity(w)) < 1e-15);
  auto dirac = mul_op([](const std::vector<LatticePoint>& p) { return cplx(p[0].n == 1 && p[1].n == -2 ? 1 : 0); }, w);
  CHECK(dirac.m.nonZeros() == 1);
  long idx = w.index({1, -2});
  CHECK(std::abs(dirac.entry(idx, idx) - 1.0) < 1e-15);
}

TEST_CASE("shift operator") {
  Window w({centered_axis(0.5, 1.0, 1)});
  auto s = shift_op([](const std::vector<LatticePoint>&) { return cplx(1); }, {1}, w);
  CHECK(s.m.nonZeros() == 2);
  CHECK(std::abs(s.entry(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(s.entry(2, 1) - 1.0) < 1e-15);
  auto z = shift_op([](const std::vector<LatticePoint>&) { return cplx(0); }, {1}, w);
  CHECK(op_norm_bound(z) == 0.0);
}

TEST_CASE("shift degree bounds the measured displacement") {
  Window w({centered_axis(0.5, 1.0, 4), centered_axis(0.5, 0.7, 4)});
  auto f = [](const std::vector<LatticePoint>& p) { return cplx(1.0 / (1 + p[0].value() + p[1].value())); };
  auto a = shift_op(f, {1, -1}, w);
  auto b = shift_op(f, {0, 1}, w);
  for (const auto& op : {a, b, a * b, a + b, adjoint(a) * b}) {
    auto ms = op.measured_shift();
    for (std::size_t i = 0; i < ms.size(); ++i) CHECK(ms[i] <= op.shift_degree[i]);
  }
}

TEST_CASE("operator norm bound") {
  Window w({centered_axis(0.5, 1.0, 5)});
  auto id = WindowedOperator::identity(w);
  CHECK(op_norm_bound(id) == doctest::Approx(1.0));
  CHECK(op_norm_bound(scale(2.0, id)) == doctest::Approx(2.0));
}

TEST_CASE("relation residual of A - A vanishes") {
  Window w({centered_axis(0.5, 1.0, 5)});
  auto a = shift_op([](const std::vector<LatticePoint>& p) { return cplx(p[0].value()); }, {1}, w);
  auto r = relation_residual("A - A", {{1.0, {&a}}, {-1.0, {&a}}}, 1);
  CHECK(r.residual == 0.0);
  CHECK(r.pass());
}
