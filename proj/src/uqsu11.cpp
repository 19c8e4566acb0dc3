#include "pcqg/uqsu11.hpp"

#include <cmath>
#include <stdexcept>

namespace pcqg {

nlohmann::json CompatibleSet::to_json() const {
  return {{"y", y},
          {"c", c},
          {"q", q},
          {"kind", to_string(desc.kind)},
          {"label", desc.label},
          {"z", desc.z},
          {"z_exp", z_exp},
          {"t0", t0()}};
}

std::vector<CompatibleSet> compatible_sets(double y, double c, double q) {
  LatticeSpec L(q, y * y, 1);
  auto cl = classify_irreducible_csets(c, q, L);
  std::vector<CompatibleSet> out;
  for (const auto& d : cl.sets) {
    auto n = L.contains(d.z);
    if (!n) continue;
    out.push_back({q, y, c, d, *n});
  }
  return out;
}

WindowedOperator UqRep::unit(std::size_t idx) const {
  std::vector<cplx> v(window.size(), 0.0);
  v.at(idx) = 1.0;
  return diag_op(v, window);
}

nlohmann::json UqRep::to_json() const {
  nlohmann::json T = nlohmann::json::array();
  for (long j = window.axis(0).nmin; j <= window.axis(0).nmax; ++j) T.push_back(t0_gamma_exp + 2 * j);
  return {{"y", y}, {"c", c}, {"q", q}, {"label", label}, {"star", star}, {"T_gamma_exponents", T},
          {"E", E.to_json()}, {"F", F.to_json()}, {"K", K.to_json()}};
}

UqRep build_pi_T(const CompatibleSet& cs, int truncation) { return build_pi_T_with_casimir(cs, truncation, cs.c); }

UqRep build_pi_T_with_casimir(const CompatibleSet& cs, int truncation, double c_used) {
  if (truncation < 1) throw std::invalid_argument("build_pi_T: truncation must be positive");
  const double q = cs.q;
  Axis ax{LatticeSpec(q, cs.t0(), 1), 0, 0, false, false};
  switch (cs.desc.kind) {
    case CSetKind::FullOrbit: {
      long h = truncation / 2;
      ax.nmin = -h;
      ax.nmax = truncation - 1 - h;
      ax.lo_artificial = ax.hi_artificial = true;
      break;
    }
    case CSetKind::PlusSeries:  // top point, continuing downwards in value
      ax.nmin = 0;
      ax.nmax = truncation - 1;
      ax.hi_artificial = true;
      break;
    case CSetKind::MinusSeries:
      ax.nmin = -(truncation - 1);
      ax.nmax = 0;
      ax.lo_artificial = true;
      break;
    case CSetKind::Trivial: break;
  }
  UqRep rep;
  rep.q = q;
  rep.y = cs.y;
  rep.c = cs.c;
  rep.label = cs.desc.label;
  rep.window = Window({ax});
  rep.t0_gamma_exp = cs.z_exp;
  const double gap = std::abs(q - 1.0 / q);
  const double c = c_used;
  auto radicand = [&](double r) {
    // zero exactly on the algebraic boundary of the c-set
    double r2 = q * r * r;
    if (adapted_sign(cs.c, r2, q) == 0) return 0.0;
    double v = tau(r2) + c;
    if (v < 0) {
      if (v > -1e-9 * tau(r2)) return 0.0;
      throw std::domain_error("build_pi_T: negative radicand, input is not a c-set");
    }
    return v;
  };
  rep.E = shift_op([&](const std::vector<LatticePoint>& p) { return cplx(std::sqrt(radicand(p[0].value())) / gap); },
                   {1}, rep.window);
  rep.F = adjoint(rep.E);
  rep.K = mul_op([](const std::vector<LatticePoint>& p) { return cplx(p[0].value()); }, rep.window);
  rep.Kinv = mul_op([](const std::vector<LatticePoint>& p) { return cplx(1.0 / p[0].value()); }, rep.window);
  return rep;
}

UqRep build_verma(double y, double q, int n_max) {
  if (n_max < 2) throw std::invalid_argument("build_verma: n_max must be >= 2");
  UqRep rep;
  rep.q = q;
  rep.y = y;
  rep.star = false;
  rep.label = "verma";
  // e_n has weight y q^n; the bottom e_0 is a genuine edge
  rep.window = Window({Axis{LatticeSpec(q, y, 1), 0, n_max, false, true}});
  const double d = q - 1.0 / q;
  rep.E = shift_op([](const std::vector<LatticePoint>&) { return cplx(1.0); }, {1}, rep.window);
  rep.F = shift_op(
      [&](const std::vector<LatticePoint>& p) {
        double n = static_cast<double>(p[0].n);
        double v = (std::pow(q, n) - std::pow(q, -n)) * (std::pow(q, n - 1) * y * y - std::pow(q, 1 - n) / (y * y));
        return cplx(v / (d * d));
      },
      {-1}, rep.window);
  rep.K = mul_op([](const std::vector<LatticePoint>& p) { return cplx(p[0].value()); }, rep.window);
  rep.Kinv = mul_op([](const std::vector<LatticePoint>& p) { return cplx(1.0 / p[0].value()); }, rep.window);
  return rep;
}

WindowedOperator casimir_op(const UqRep& rep) {
  const double q = rep.q;
  const double g = 1.0 / q - q;
  auto K2 = rep.K * rep.K;
  auto Km2 = rep.Kinv * rep.Kinv;
  return (g * g) * (rep.F * rep.E) - cplx(q) * K2 - cplx(1.0 / q) * Km2;
}

RelationResidual casimir_scalarity(const UqRep& rep, double tol) {
  const double q = rep.q;
  const double g = 1.0 / q - q;
  return relation_residual("C = c", {{g * g, {&rep.F, &rep.E}},
                                     {-q, {&rep.K, &rep.K}},
                                     {-1.0 / q, {&rep.Kinv, &rep.Kinv}},
                                     {-rep.c, {}}},
                           2, tol);
}

std::vector<RelationResidual> verify_uqsu11_relations(const UqRep& rep, double tol) {
  const double q = rep.q;
  const double d = q - 1.0 / q;
  std::vector<RelationResidual> out;
  const int m = 1;
  out.push_back(relation_residual("K Kinv = 1", {{1.0, {&rep.K, &rep.Kinv}}, {-1.0, {}}}, m, tol));
  auto Kstar = adjoint(rep.K);
  out.push_back(difference_residual("K* = K", Kstar, rep.K, m, tol));
  auto Estar = adjoint(rep.E);
  out.push_back(difference_residual("E* = F", Estar, rep.F, m, tol));
  out.push_back(relation_residual("KE = qEK", {{1.0, {&rep.K, &rep.E}}, {-q, {&rep.E, &rep.K}}}, m, tol));
  out.push_back(relation_residual("[F,E] = (K^2-K^-2)/(q-q^-1)",
                                  {{1.0, {&rep.F, &rep.E}},
                                   {-1.0, {&rep.E, &rep.F}},
                                   {-1.0 / d, {&rep.K, &rep.K}},
                                   {1.0 / d, {&rep.Kinv, &rep.Kinv}}},
                                  2, tol));
  // graded form: E_r = E Unit_r maps H_r to H_{qr}, F_r = E_r^*
  RelationResidual grade{"Unit_qr E_r = E_r = E_r Unit_r", 0, 0, 1, 0, tol};
  RelationResidual triple{"F_r E_r - E_{r/q} F_{r/q} = (r^2-r^-2)/(q-q^-1) Unit_r", 0, 0, 2, 0, tol};
  const Window& w = rep.window;
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto Ui = rep.unit(i);
    auto Er = rep.E * Ui;
    auto ex = w.exponents(i);
    long up = w.index({ex[0] + 1});
    long down = w.index({ex[0] - 1});
    WindowedOperator Uup = up >= 0 ? rep.unit(up) : WindowedOperator::zero(w);
    auto Fr = adjoint(Er);
    auto r1 = relation_residual("", {{1.0, {&Uup, &Er}}, {-1.0, {&Er}}}, 1, tol);
    grade.residual = std::max(grade.residual, r1.residual);
    grade.abs_residual = std::max(grade.abs_residual, r1.abs_residual);
    grade.columns += r1.columns;
    WindowedOperator Ed = WindowedOperator::zero(w), Fd = WindowedOperator::zero(w);
    if (down >= 0) {
      Ed = rep.E * rep.unit(down);
      Fd = adjoint(Ed);
    }
    double rv = rep.r(i);
    double coef = (rv * rv - 1.0 / (rv * rv)) / d;
    auto r2 = relation_residual("", {{1.0, {&Fr, &Er}}, {-1.0, {&Ed, &Fd}}, {-coef, {&Ui}}}, 2, tol);
    triple.residual = std::max(triple.residual, r2.residual);
    triple.abs_residual = std::max(triple.abs_residual, r2.abs_residual);
    triple.columns += r2.columns;
  }
  if (rep.star) {
    out.push_back(grade);
    out.push_back(triple);
  }
  return out;
}

}  // namespace pcqg
