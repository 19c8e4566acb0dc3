// Acceptance suite: one PASS/FAIL line per criterion; exit status 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "pcqg/cset.hpp"
#include "pcqg/decoupling.hpp"
#include "pcqg/dynsu2.hpp"
#include "pcqg/fdpcqg.hpp"
#include "pcqg/rewrite.hpp"
#include "pcqg/spectrum.hpp"
#include "pcqg/uqsu11.hpp"
#include "random_words.hpp"

using namespace pcqg;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail.str("");
    if (!pass) detail << "; ";
    pass = false;
    detail << why;
  }
};

double max_residual(const std::vector<RelationResidual>& rs) {
  double m = 0;
  for (const auto& r : rs) m = std::max(m, r.residual);
  return m;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<double> kPiCx = {1.0, 0.7};
const std::vector<double> kPiCc = {0.0, 1.5, -1.9};

std::vector<DynRep> pi_c_reps() {
  std::vector<DynRep> out;
  for (double x : kPiCx)
    for (double c : kPiCc) out.push_back(build_pi_c({0.5, x, c}, 10));
  return out;
}

std::vector<PiSTBundle> pi_st_bundles() {
  std::vector<PiSTBundle> out;
  for (double x : {1.0, 0.7})
    for (double c : {0.0, 1.3, -2.5, -4.25, 4.25, 2.5})
      for (const auto& p : enumerate_irreps(0.5, x, c)) out.push_back(build_pi_ST(p));
  return out;
}

void c1_csets(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t n = 0, bad = 0, cvals = 0;
  for (double q : {0.3, 0.5, 0.8}) {
    auto grid = cset_c_grid(q, 200, 12);
    cvals = std::min<std::size_t>(cvals ? cvals : grid.size(), grid.size());
    for (double c : grid)
      for (double a : {1.0, q, std::pow(q, 0.37), std::pow(q, 1.37)}) {
        ++n;
        if (!compare_csets(c, q, 12, a).match) ++bad;
      }
  }
  double t = seconds_since(t0);
  o.detail << n << " comparisons, >= " << cvals << " c values per q, " << bad << " mismatches, " << t << " s";
  if (bad) o.fail(std::to_string(bad) + " mismatches");
  if (cvals < 200) o.fail("fewer than 200 c values");
  if (t >= 60) o.fail("runtime " + std::to_string(t) + " s");
}

void c2_pi_T(Outcome& o) {
  std::size_t reps = 0;
  double worst = 0;
  for (double y : {1.0, 0.7})
    for (double c : {0.0, 1.3, -2.0, -2.5, -4.25})
      for (const auto& cs : compatible_sets(y, c, 0.5)) {
        auto rep = build_pi_T(cs);
        auto rs = verify_uqsu11_relations(rep);
        rs.push_back(casimir_scalarity(rep));
        worst = std::max(worst, max_residual(rs));
        ++reps;
        if (!all_pass(rs)) o.fail("y=" + std::to_string(y) + " c=" + std::to_string(c) + " " + cs.desc.label);
      }
  if (o.pass) o.detail << reps << " representations, max residual " << worst;
}

void c3_pi_c(Outcome& o) {
  double worst = 0, weakest = 1e300;
  std::size_t faults = 0, relations = 0;
  std::mt19937 rng(17);
  for (const auto& base : pi_c_reps()) {
    auto rs = verify_dynsu2_relations(base);
    relations = rs.size();
    worst = std::max(worst, max_residual(rs));
    if (!all_pass(rs)) o.fail("relations at x=" + std::to_string(base.x) + " c=" + std::to_string(base.c));
    for (int g = 0; g < 4; ++g) {
      std::vector<std::pair<long, long>> entries;
      for (int k = 0; k < base.gens[g].m.outerSize(); ++k)
        for (SpMat::InnerIterator it(base.gens[g].m, k); it; ++it)
          if (base.window.interior(it.row(), 3) && base.window.interior(it.col(), 3))
            entries.push_back({it.row(), it.col()});
      std::shuffle(entries.begin(), entries.end(), rng);
      for (std::size_t t = 0; t < std::min<std::size_t>(entries.size(), 5); ++t) {
        auto rep = base;
        rep.gens[g].m.coeffRef(entries[t].first, entries[t].second) += 1e-3;
        double r = max_residual(verify_dynsu2_relations(rep));
        weakest = std::min(weakest, r);
        ++faults;
        if (r <= 1e-4) o.fail("undetected fault in generator " + std::to_string(g));
      }
    }
  }
  if (o.pass)
    o.detail << "6 representations x " << relations << " relations, max residual " << worst << "; " << faults
             << " injected faults, smallest detection residual " << weakest;
}

void c4_decoupling(Outcome& o) {
  double worst = 0;
  std::size_t n = 0;
  for (const auto& rep : pi_c_reps()) {
    auto im = build_phi_images(rep);
    auto rs = verify_phi_relations(im);
    auto om = casimir_omega(im);
    rs.insert(rs.end(), om.checks.begin(), om.checks.end());
    rs.push_back(om.scalar);
    auto rt = phi_inverse_roundtrip(im);
    rs.insert(rs.end(), rt.begin(), rt.end());
    worst = std::max(worst, max_residual(rs));
    n += rs.size();
    if (!all_pass(rs)) o.fail("pi_c at x=" + std::to_string(rep.x) + " c=" + std::to_string(rep.c));
  }
  for (const auto& b : pi_st_bundles()) {
    auto rt = pi_ST_roundtrip(b);
    worst = std::max(worst, max_residual(rt));
    n += rt.size();
    if (!all_pass(rt)) o.fail("pi_ST round trip at c=" + std::to_string(b.pair.S.c));
  }
  if (o.pass) o.detail << n << " checks, max residual " << worst;
}

void c5_spectrum(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  struct Case {
    double x, c0;
  };
  for (Case cs : {Case{1.0, -2.5}, Case{std::sqrt(0.7), -std::max(tau(1.4), tau(0.7))}}) {
    auto sd = spec_omega_closed_form(0.5, cs.x);
    if (std::abs(sd.c0 - cs.c0) > 1e-12) o.fail("c0 = " + std::to_string(sd.c0));
    if (std::abs(sd.right - 2.5) > 1e-12) o.fail("right endpoint " + std::to_string(sd.right));
    auto cmp = compare_spectrum(0.5, cs.x, 400, 12);
    if (!cmp.mismatches.empty()) o.fail(std::to_string(cmp.mismatches.size()) + " mismatches at x^2=" + std::to_string(cs.x * cs.x));
    if (o.pass) o.detail << "x^2=" << cs.x * cs.x << ": c0=" << sd.c0 << ", " << cmp.checked << " points, 0 mismatches; ";
  }
  double t = seconds_since(t0);
  if (t >= 300) o.fail("runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail << t << " s";
}

void c6_haar(Outcome& o) {
  std::size_t n = 0, oracles = 0;
  double gap = 0, inv = 0, orc = 0;
  for (const auto& inst : instance_library()) {
    if (!inst.groupoid) continue;
    auto hc = haar_cesaro(inst.G);
    auto hl = haar_linear_solve(inst.G);
    ++n;
    if (!hc.ok() || !hl.ok()) {
      o.fail(inst.name + ": " + hc.status + " / " + hl.status);
      continue;
    }
    double d = family_distance(hc, hl);
    gap = std::max(gap, d);
    for (const auto* h : {&hc, &hl}) inv = std::max({inv, h->i1_residual, h->invariance_residual});
    if (d >= 1e-8) o.fail(inst.name + " methods differ by " + std::to_string(d));
    if (std::max({hc.i1_residual, hc.invariance_residual, hl.i1_residual, hl.invariance_residual}) >= 1e-10)
      o.fail(inst.name + " invariance");
    if (inst.commutative_groupoid) {
      HaarFamily oracle;
      oracle.phi = uniform_haar_oracle(*inst.groupoid);
      double od = family_distance(oracle, hl);
      orc = std::max(orc, od);
      ++oracles;
      if (od >= 1e-10) o.fail(inst.name + " differs from the uniform measure");
    }
  }
  if (n < 6) o.fail("fewer than 6 instances");
  if (o.pass)
    o.detail << n << " instances, method gap " << gap << ", (I1)/invariance " << inv << ", oracle distance " << orc
             << " on " << oracles << " commutative instances";
}

void c7_axioms(Outcome& o) {
  std::size_t n = 0;
  for (const auto& inst : instance_library()) {
    auto ax = verify_axioms(inst.G);
    if (inst.groupoid) {
      ++n;
      if (!ax.all_pass()) o.fail(inst.name + " fails " + ax.failing().front());
    } else if (ax.failing() != std::vector<std::string>{"D2"}) {
      std::string f;
      for (const auto& s : ax.failing()) f += s + " ";
      o.fail(inst.name + " fails [" + f + "]");
    }
  }
  if (o.pass) o.detail << n << " groupoid instances pass all axioms; Raum fails exactly (D2)";
}

void c8_rewriter(Outcome& o) {
  const double q = 0.5;
  std::vector<DynRep> reps = {build_pi_c({q, 1.0, 0.0}, 10), build_pi_c({q, 1.0, 1.3}, 10)};
  std::mt19937 rng(2024);
  double worst = 0;
  std::size_t bad_idem = 0;
  for (int i = 0; i < 500; ++i) {
    std::string s = random_word(rng);
    auto w = parse_word(s);
    auto red = reduce_word(w, q);
    for (const auto& rep : reps) {
      double r = reduction_residual(rep, w, red).residual;
      worst = std::max(worst, r);
      if (r >= 1e-9) o.fail("word " + s);
    }
    if (!same_normal_form(reduce_expr(to_expr(red), q), red)) ++bad_idem;
  }
  if (bad_idem) o.fail(std::to_string(bad_idem) + " non-idempotent reductions");
  if (o.pass) o.detail << "500 words at c = 0, 1.3, max residual " << worst << ", all idempotent";
}

void c9_norms(Outcome& o) {
  double worst = 0;
  std::size_t bundles = 0;
  auto check = [&](const std::array<double, 4>& n, const std::string& what) {
    ++bundles;
    for (double v : n) {
      worst = std::max(worst, v);
      if (v > 1 + 1e-12) o.fail(what + " norm " + std::to_string(v));
    }
  };
  for (const auto& rep : pi_c_reps()) check(generator_norms(rep), "pi_c");
  auto cr = coproduct_compat_check(build_pi_c({0.5, 1.0, 0.0}, 5), build_pi_c({0.5, 1.0, 1.0}, 5));
  check(cr.norms, "coproduct");
  for (const auto& b : pi_st_bundles()) check(generator_norms(b.rep), "pi_ST");
  if (o.pass) o.detail << bundles << " bundles, largest singular value " << worst;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const Criterion criteria[] = {
      {"1 c-set classifier equals brute force", c1_csets},
      {"2 pi_T relations and Casimir", c2_pi_T},
      {"3 pi_c relations and fault detection", c3_pi_c},
      {"4 decoupling into two su(1,1) copies", c4_decoupling},
      {"5 Casimir spectrum closed form vs enumeration", c5_spectrum},
      {"6 Haar family: Cesaro, linear solve, oracle", c6_haar},
      {"7 axiom discrimination", c7_axioms},
      {"8 rewriter soundness and idempotence", c8_rewriter},
      {"9 generator norm bound", c9_norms},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed ? 1 : 0;
}
