#include "pcqg/decoupling.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>
#include <stdexcept>

namespace pcqg {

namespace {

CoefFn T(int a, int s, int t, int p) { return CoefFn::tau_pow(a, s, t, p); }

WindowedOperator value_op(const DynRep& rep, double (*f)(double, double)) {
  std::vector<cplx> v(rep.window.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(rep.lam[i], rep.rho[i]);
  return diag_op(v, rep.window);
}

}  // namespace

PhiImages build_phi_images(const DynRep& rep) {
  PhiImages im;
  im.src = &rep;
  const double g = 1.0 / rep.q - rep.q;
  auto f_lq = rep.fn(T(0, 1, 0, 1) * T(1, 0, 1, 1));   // tau^1/2(lam) tau^1/2(q rho)
  auto f_lr = rep.fn(T(0, 1, 0, 1) * T(-1, 0, 1, 1));  // tau^1/2(lam) tau^1/2(rho/q)
  im.E1 = cplx(1.0 / g) * (rep.alpha() * f_lq);
  im.E2 = cplx(1.0 / g) * (rep.beta() * f_lr);
  im.F1 = cplx(1.0 / g) * (rep.delta() * f_lr);
  im.F2 = cplx(-1.0 / g) * (rep.gamma() * f_lq);
  im.K1 = value_op(rep, [](double l, double r) { return std::sqrt(l * r); });
  im.K2 = value_op(rep, [](double l, double r) { return std::sqrt(l / r); });
  im.K1inv = value_op(rep, [](double l, double r) { return 1.0 / std::sqrt(l * r); });
  im.K2inv = value_op(rep, [](double l, double r) { return std::sqrt(r / l); });
  return im;
}

namespace {

std::vector<RelationTerm> casimir_terms(const PhiImages& im, int which, cplx sign = 1.0) {
  const double q = im.src->q;
  const double g = 1.0 / q - q;
  const auto& E = which == 1 ? im.E1 : im.E2;
  const auto& F = which == 1 ? im.F1 : im.F2;
  const auto& K = which == 1 ? im.K1 : im.K2;
  const auto& Ki = which == 1 ? im.K1inv : im.K2inv;
  return {{sign * g * g, {&F, &E}}, {-sign * q, {&K, &K}}, {-sign / q, {&Ki, &Ki}}};
}

std::vector<RelationTerm> times(std::vector<RelationTerm> ts, const WindowedOperator* left,
                                const WindowedOperator* right, cplx s = 1.0) {
  for (auto& t : ts) {
    if (left) t.word.insert(t.word.begin(), left);
    if (right) t.word.push_back(right);
    t.coef *= s;
  }
  return ts;
}

void append(std::vector<RelationTerm>& a, const std::vector<RelationTerm>& b) { a.insert(a.end(), b.begin(), b.end()); }

// Phi(Unit_r^(1)) Phi(Unit_s^(2)) is the projection onto lam rho = r^2, lam / rho = s^2; it
// must equal 1^{rs}_{r/s} when r/s lies on the lattice and vanish otherwise.
RelationResidual unit_product_check(const DynRep& rep, double tol) {
  RelationResidual r;
  r.label = "Phi(Unit_r) Phi(Unit_s) = 1^{rs}_{r/s}";
  r.tolerance = tol;
  r.columns = rep.window.size();
  LatticeSpec L(rep.q, rep.x, 1);
  double worst = 0;
  for (std::size_t a = 0; a < rep.window.size(); ++a) {
    double r2 = rep.lam[a] * rep.rho[a], s2 = rep.lam[a] / rep.rho[a];
    double rr = std::sqrt(r2), ss = std::sqrt(s2);
    bool on_lattice = L.contains(rr / ss).has_value() && L.contains(rr * ss).has_value();
    for (std::size_t b = 0; b < rep.window.size(); ++b) {
      bool in_r = std::abs(q_exponent(rep.lam[b] * rep.rho[b] / r2, rep.q)) < 1e-9;
      bool in_s = std::abs(q_exponent(rep.lam[b] / rep.rho[b] / s2, rep.q)) < 1e-9;
      bool in_unit = on_lattice && std::abs(q_exponent(rep.lam[b] / (rr * ss), rep.q)) < 1e-9 &&
                     std::abs(q_exponent(rep.rho[b] / (rr / ss), rep.q)) < 1e-9;
      if ((in_r && in_s) != in_unit) worst = 1;
    }
  }
  r.residual = r.abs_residual = worst;
  return r;
}

}  // namespace

std::vector<RelationResidual> verify_phi_relations(const PhiImages& im, double tol) {
  const double q = im.src->q;
  const double d = q - 1.0 / q;
  std::vector<RelationResidual> out;
  auto E1s = adjoint(im.E1), E2s = adjoint(im.E2);
  out.push_back(difference_residual("F1 = E1*", im.F1, E1s, 1, tol));
  out.push_back(difference_residual("F2 = E2*", im.F2, E2s, 1, tol));
  auto comm = [&](const std::string& label, const WindowedOperator& a, const WindowedOperator& b) {
    out.push_back(relation_residual(label, {{1.0, {&a, &b}}, {-1.0, {&b, &a}}}, 2, tol));
  };
  comm("[E1,E2] = 0", im.E1, im.E2);
  comm("[F1,E2] = 0", im.F1, im.E2);
  comm("[E1,F2] = 0", im.E1, im.F2);
  comm("[F1,F2] = 0", im.F1, im.F2);
  comm("[K1,E2] = 0", im.K1, im.E2);
  comm("[K2,E1] = 0", im.K2, im.E1);
  out.push_back(relation_residual("K1 E1 = q E1 K1", {{1.0, {&im.K1, &im.E1}}, {-q, {&im.E1, &im.K1}}}, 1, tol));
  out.push_back(relation_residual("K2 E2 = q E2 K2", {{1.0, {&im.K2, &im.E2}}, {-q, {&im.E2, &im.K2}}}, 1, tol));
  for (int i : {1, 2}) {
    const auto& E = i == 1 ? im.E1 : im.E2;
    const auto& F = i == 1 ? im.F1 : im.F2;
    const auto& K = i == 1 ? im.K1 : im.K2;
    const auto& Ki = i == 1 ? im.K1inv : im.K2inv;
    std::string n = std::to_string(i);
    out.push_back(relation_residual("[F" + n + ",E" + n + "] = (K" + n + "^2-K" + n + "^-2)/(q-1/q)",
                                    {{1.0, {&F, &E}}, {-1.0, {&E, &F}}, {-1.0 / d, {&K, &K}}, {1.0 / d, {&Ki, &Ki}}},
                                    2, tol));
  }
  // K1 K2 = lam and K1 / K2 = rho: the unit products land on 1^{rs}_{r/s}
  const DynRep& rep = *im.src;
  auto lam = rep.fn(CoefFn::monomial(2, 0)), rho = rep.fn(CoefFn::monomial(0, 2));
  out.push_back(relation_residual("K1 K2 = lam", {{1.0, {&im.K1, &im.K2}}, {-1.0, {&lam}}}, 1, tol));
  out.push_back(relation_residual("K1 K2^-1 = rho", {{1.0, {&im.K1, &im.K2inv}}, {-1.0, {&rho}}}, 1, tol));
  out.push_back(unit_product_check(rep, tol));
  return out;
}

WindowedOperator casimir_copy(const PhiImages& im, int which) {
  const double q = im.src->q;
  const double g = 1.0 / q - q;
  const auto& E = which == 1 ? im.E1 : im.E2;
  const auto& F = which == 1 ? im.F1 : im.F2;
  const auto& K = which == 1 ? im.K1 : im.K2;
  const auto& Ki = which == 1 ? im.K1inv : im.K2inv;
  return cplx(g * g) * (F * E) - cplx(q) * (K * K) - cplx(1.0 / q) * (Ki * Ki);
}

OmegaReport casimir_omega(const PhiImages& im, double tol) {
  OmegaReport r;
  r.omega = casimir_copy(im, 1);
  auto sum = casimir_terms(im, 1);
  append(sum, casimir_terms(im, 2));
  r.checks.push_back(relation_residual("C1 + C2 = 0", sum, 2, tol));
  const DynRep& rep = *im.src;
  const char* names[] = {"alpha", "beta", "gamma", "delta"};
  for (int i = 0; i < 4; ++i) {
    auto ts = times(casimir_terms(im, 1), nullptr, &rep.gens[i]);
    append(ts, times(casimir_terms(im, 1), &rep.gens[i], nullptr, -1.0));
    r.checks.push_back(relation_residual(std::string("[Omega,") + names[i] + "] = 0", ts, 3, tol));
  }
  auto sc = casimir_terms(im, 1);
  sc.push_back({-rep.c, {}});
  r.scalar = relation_residual("Omega = c", sc, 2, tol);
  return r;
}

std::vector<RelationResidual> phi_inverse_roundtrip(const PhiImages& im, double tol) {
  const DynRep& rep = *im.src;
  const double g = 1.0 / rep.q - rep.q;
  auto h_lq = rep.fn(T(0, 1, 0, -1) * T(1, 0, 1, -1));
  auto h_lr = rep.fn(T(0, 1, 0, -1) * T(-1, 0, 1, -1));
  std::vector<RelationResidual> out;
  out.push_back(relation_residual("alpha = (1/q-q) E1 tau^-1/2(lam) tau^-1/2(q rho)",
                                  {{g, {&im.E1, &h_lq}}, {-1.0, {&rep.alpha()}}}, 1, tol));
  out.push_back(relation_residual("beta = (1/q-q) E2 tau^-1/2(lam) tau^-1/2(rho/q)",
                                  {{g, {&im.E2, &h_lr}}, {-1.0, {&rep.beta()}}}, 1, tol));
  out.push_back(relation_residual("gamma = (q-1/q) F2 tau^-1/2(lam) tau^-1/2(q rho)",
                                  {{-g, {&im.F2, &h_lq}}, {-1.0, {&rep.gamma()}}}, 1, tol));
  out.push_back(relation_residual("delta = (1/q-q) F1 tau^-1/2(lam) tau^-1/2(rho/q)",
                                  {{g, {&im.F1, &h_lr}}, {-1.0, {&rep.delta()}}}, 1, tol));
  return out;
}

std::vector<IrrepPair> enumerate_irreps(double q, double x, double c) {
  auto Ss = compatible_sets(x, c, q);
  auto Ts = compatible_sets(1.0, -c, q);
  std::vector<IrrepPair> out;
  for (const auto& S : Ss)
    for (const auto& T : Ts)
      if ((S.z_exp + T.z_exp) % 2 == 0) out.push_back({S, T});
  return out;
}

namespace {

void require(bool ok, const std::string& clause) {
  if (!ok) throw std::invalid_argument("build_pi_ST: condition fails: " + clause);
}

bool is_c_set(const CompatibleSet& cs) {
  LatticeSpec L(cs.q, cs.y * cs.y, 1);
  auto cl = classify_irreducible_csets(cs.c, cs.q, L);
  for (const auto& d : cl.sets)
    if (d.kind == cs.desc.kind && std::abs(q_exponent(d.z / cs.desc.z, cs.q)) <= kBoundaryExponentTol) return true;
  return false;
}

SpMat lift(const SpMat& a, const SpMat& b) { return Eigen::kroneckerProduct(a, b); }

SpMat eye(std::size_t n) {
  SpMat m(n, n);
  m.setIdentity();
  return m;
}

}  // namespace

PiSTBundle build_pi_ST(const IrrepPair& pair, int truncation) {
  const auto& S = pair.S;
  const auto& Tset = pair.T;
  require(S.q == Tset.q, "S and T share q");
  require(is_c_set(S), "Z_S is an irreducible c-set inside x^2 q^Z");
  require(Tset.y == 1.0 && is_c_set(Tset), "Z_T is an irreducible (-c)-set inside q^Z");
  require(Tset.c == -S.c, "T carries Casimir -c");
  require((S.z_exp + Tset.z_exp) % 2 == 0, "Z_S Z_T inside x^2 q^{2Z}");

  PiSTBundle b;
  b.pair = pair;
  b.piS = build_pi_T(S, truncation);
  b.piT = build_pi_T(Tset, truncation);
  const double q = S.q;
  Window w({b.piS.window.axis(0), b.piT.window.axis(0)});
  const std::size_t nS = b.piS.window.size(), nT = b.piT.window.size();
  b.ES = WindowedOperator(w, lift(b.piS.E.m, eye(nT)), {1, 0});
  b.FS = WindowedOperator(w, lift(b.piS.F.m, eye(nT)), {1, 0});
  b.ET = WindowedOperator(w, lift(eye(nS), b.piT.E.m), {0, 1});
  b.FT = WindowedOperator(w, lift(eye(nS), b.piT.F.m), {0, 1});
  b.KS = WindowedOperator(w, lift(b.piS.K.m, eye(nT)), {0, 0});
  b.KT = WindowedOperator(w, lift(eye(nS), b.piT.K.m), {0, 0});

  DynRep& r = b.rep;
  r.q = q;
  r.x = S.y;
  r.c = S.c;
  r.kind = "pi_ST";
  r.window = w;
  r.truncated = w.axis(0).lo_artificial || w.axis(0).hi_artificial || w.axis(1).lo_artificial ||
                w.axis(1).hi_artificial;
  r.lam.resize(w.size());
  r.rho.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    double rv = w.value(i, 0), sv = w.value(i, 1);
    r.lam[i] = rv * sv;
    r.rho[i] = rv / sv;
  }
  r.fill_lattice_exps();
  const double g = 1.0 / q - q;
  auto h_lq = r.fn(T(0, 1, 0, -1) * T(1, 0, 1, -1));
  auto h_lr = r.fn(T(0, 1, 0, -1) * T(-1, 0, 1, -1));
  r.gens[0] = cplx(g) * (b.ES * h_lq);
  r.gens[1] = cplx(g) * (b.ET * h_lr);
  r.gens[2] = cplx(-g) * (b.FT * h_lq);
  r.gens[3] = cplx(g) * (b.FS * h_lr);
  return b;
}

std::vector<RelationResidual> pi_ST_roundtrip(const PiSTBundle& b, double tol) {
  auto im = build_phi_images(b.rep);
  std::vector<RelationResidual> out;
  out.push_back(difference_residual("Phi(E1) = pi_S(E) (x) 1", im.E1, b.ES, 1, tol));
  out.push_back(difference_residual("Phi(F1) = pi_S(F) (x) 1", im.F1, b.FS, 1, tol));
  out.push_back(difference_residual("Phi(E2) = 1 (x) pi_T(E)", im.E2, b.ET, 1, tol));
  out.push_back(difference_residual("Phi(F2) = 1 (x) pi_T(F)", im.F2, b.FT, 1, tol));
  out.push_back(difference_residual("Phi(K1) = pi_S(K) (x) 1", im.K1, b.KS, 1, tol));
  out.push_back(difference_residual("Phi(K2) = 1 (x) pi_T(K)", im.K2, b.KT, 1, tol));
  return out;
}

}  // namespace pcqg
