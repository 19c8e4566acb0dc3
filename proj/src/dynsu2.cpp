#include "pcqg/dynsu2.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>
#include <random>
#include <stdexcept>

#include "pcqg/lattice.hpp"

namespace pcqg {

WindowedOperator DynRep::fn(const CoefFn& f) const {
  std::vector<cplx> v(window.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.eval(lam[i], rho[i], q, f.unit ? lattice_exps[i] : std::nullopt);
  return diag_op(v, window);
}

void DynRep::fill_lattice_exps() {
  LatticeSpec L(q, x, 1);
  lattice_exps.assign(window.size(), std::nullopt);
  for (std::size_t i = 0; i < window.size(); ++i) {
    auto a = L.contains(lam[i]), b = L.contains(rho[i]);
    if (a && b) lattice_exps[i] = std::make_pair(*a, *b);
  }
}

nlohmann::json DynRep::to_json(bool with_matrices) const {
  nlohmann::json j{{"kind", kind}, {"q", q}, {"x", x}, {"c", c}, {"truncated", truncated}, {"window", window.to_json()}};
  if (with_matrices) {
    j["alpha"] = alpha().to_json();
    j["beta"] = beta().to_json();
    j["gamma"] = gamma().to_json();
    j["delta"] = delta().to_json();
  }
  return j;
}

double pi_c_weight(double q, double c, int eps, int nu, double y, double z) {
  double theta = (eps < 0 && nu > 0) ? -1.0 : 1.0;
  double num = tau(std::pow(y, eps) * std::pow(z, nu) / q) + eps * nu * c;
  double den = tau(y) * tau(std::pow(z, nu) / q);
  return theta * std::sqrt(num / den);
}

Window default_pi_c_window(double q, double x, long half_width) {
  return Window({centered_axis(q, x, half_width), centered_axis(q, x, half_width)});
}

DynRep build_pi_c(const DynParams& p, long half_width) { return build_pi_c(p, default_pi_c_window(p.q, p.x, half_width)); }

DynRep build_pi_c(const DynParams& p, const Window& w) {
  if (!(std::abs(p.c) < 2)) throw std::domain_error("build_pi_c: requires |c| < 2");
  if (w.dims() != 2) throw std::invalid_argument("build_pi_c: needs a two-dimensional window");
  DynRep r;
  r.q = p.q;
  r.x = p.x;
  r.c = p.c;
  r.kind = "pi_c";
  r.window = w;
  r.lam.resize(w.size());
  r.rho.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    r.lam[i] = w.value(i, 0);
    r.rho[i] = w.value(i, 1);
  }
  for (int eps : {-1, 1})
    for (int nu : {-1, 1})
      r.gens[DynRep::gen_index(eps, nu)] = shift_op(
          [&](const std::vector<LatticePoint>& pt) {
            return cplx(pi_c_weight(p.q, p.c, eps, nu, pt[0].value(), pt[1].value()));
          },
          {-eps, -nu}, w);
  r.fill_lattice_exps();
  return r;
}

const WindowedOperator& ExprEvaluator::letter(const Letter& l) {
  auto it = letters_.find(l);
  if (it != letters_.end()) return it->second;
  const auto& g = rep_.u(l.eps, l.nu);
  return letters_.emplace(l, l.star ? adjoint(g) : g).first->second;
}

const WindowedOperator& ExprEvaluator::function(const CoefFn& f) {
  store_.push_back(rep_.fn(f));
  return store_.back();
}

std::vector<RelationTerm> ExprEvaluator::terms(const Expr& e, cplx overall) {
  std::vector<RelationTerm> out;
  for (const auto& t : e) {
    RelationTerm rt;
    rt.coef = overall;
    for (const auto& f : t.factors) {
      if (auto* l = std::get_if<Letter>(&f))
        rt.word.push_back(&letter(*l));
      else
        rt.word.push_back(&function(std::get<CoefFn>(f)));
    }
    // a bare scalar term needs one operator to carry the window
    if (rt.word.empty()) rt.word.push_back(&function(CoefFn::constant(1.0)));
    out.push_back(std::move(rt));
  }
  return out;
}

RelationResidual expr_residual(const DynRep& rep, const std::string& label, const Expr& e, double tol, int margin) {
  ExprEvaluator ev(rep);
  auto terms = ev.terms(e);
  if (terms.empty()) return RelationResidual{label, 0, 0, 0, rep.window.size(), tol};
  if (margin < 0) margin = std::max(1, required_margin(terms));
  return relation_residual(label, terms, margin, tol);
}

RelationResidual expr_difference(const DynRep& rep, const std::string& label, const Expr& a, const Expr& b,
                                 double tol) {
  Expr d = a;
  for (auto t : b) {
    t.factors.insert(t.factors.begin(), CoefFn::constant(-1.0));
    d.push_back(std::move(t));
  }
  return expr_residual(rep, label, d, tol);
}

namespace {

Term term(std::initializer_list<Factor> fs) { return Term{std::vector<Factor>(fs)}; }

}  // namespace

namespace {

// tau(q^a lam)^2-type helpers for the commutation identities
CoefFn tl(int a) { return CoefFn::tau_pow(a, 1, 0, 2); }
CoefFn tr(int a) { return CoefFn::tau_pow(a, 0, 1, 2); }

std::vector<NamedRelation> commutation_exprs(double q) {
  const double dq = q - 1.0 / q;
  std::vector<NamedRelation> out;
  auto build = [&](const std::string& label, Letter u, CoefFn f1, CoefFn f2, double sign, int lr) {
    Letter us = u;
    us.star = true;
    Expr e;
    e.push_back(term({f1, us, u}));
    e.push_back(term({CoefFn::constant(-1.0) * f2, u, us}));
    // - sign * (q - 1/q) * (m - 1/m), m = lam rho (lr = +1) or lam / rho (lr = -1)
    e.push_back(term({CoefFn::monomial(2, 2 * lr, -sign * dq)}));
    e.push_back(term({CoefFn::monomial(-2, -2 * lr, sign * dq)}));
    out.push_back({label, e});
  };
  build("tau(lam)tau(q rho) alpha*alpha - tau(lam/q)tau(rho) alpha alpha* = (q-1/q)(lam rho - 1/(lam rho))",
        alpha_l(), tl(0) * tr(1), tl(-1) * tr(0), 1.0, 1);
  build("tau(lam)tau(rho/q) beta*beta - tau(lam/q)tau(rho) beta beta* = (q-1/q)(lam/rho - rho/lam)", beta_l(),
        tl(0) * tr(-1), tl(-1) * tr(0), 1.0, -1);
  build("tau(lam)tau(q rho) gamma*gamma - tau(q lam)tau(rho) gamma gamma* = (1/q-q)(lam/rho - rho/lam)", gamma_l(),
        tl(0) * tr(1), tl(1) * tr(0), -1.0, -1);
  build("tau(lam)tau(rho/q) delta*delta - tau(q lam)tau(rho) delta delta* = (1/q-q)(lam rho - 1/(lam rho))",
        delta_l(), tl(0) * tr(-1), tl(1) * tr(0), -1.0, 1);
  return out;
}

}  // namespace

std::vector<NamedRelation> dynsu2_relation_exprs(double q, unsigned seed) {
  const Letter a = alpha_l(), b = beta_l(), g = gamma_l(), d = delta_l();
  const Letter as = alpha_l(true), bs = beta_l(true), gs = gamma_l(true), ds = delta_l(true);
  const CoefFn minus1 = CoefFn::constant(-1.0);
  std::vector<NamedRelation> out;
  out.push_back({"alpha alpha* + beta beta* = 1", {term({a, as}), term({b, bs}), term({minus1})}});
  out.push_back({"gamma gamma* + delta delta* = 1", {term({g, gs}), term({d, ds}), term({minus1})}});
  out.push_back({"alpha* alpha + gamma* gamma = 1", {term({as, a}), term({gs, g}), term({minus1})}});
  out.push_back({"beta* beta + delta* delta = 1", {term({bs, b}), term({ds, d}), term({minus1})}});
  out.push_back({"alpha gamma* = -beta delta*", {term({a, gs}), term({b, ds})}});
  out.push_back({"alpha* beta = -gamma* delta", {term({as, b}), term({gs, d})}});

  Expr adj;
  for (int eps : {-1, 1})
    for (int nu : {-1, 1}) {
      CoefFn gfn = CoefFn::constant(-static_cast<double>(eps * nu)) * CoefFn::w_rho(nu, 1) * CoefFn::w_lam(eps, -1);
      adj.push_back(term({Letter{eps, nu, true}}));
      adj.push_back(term({Letter{-eps, -nu, false}, gfn}));
    }
  out.push_back({"u*(e,n) = u(-e,-n) n w_n(rho)^1/2 / (e w_e(lam)^1/2)", adj});

  std::mt19937 rng(seed);
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
  CoefFn f = CoefFn::monomial(pick(-2, 2), pick(-2, 2)) * CoefFn::tau_pow(pick(-2, 2), pick(-1, 1), pick(-1, 1), pick(1, 2));
  f *= CoefFn::tau_pow(pick(-2, 2), 1, pick(-1, 1), -pick(1, 2));
  Expr grad;
  for (int eps : {-1, 1})
    for (int nu : {-1, 1}) {
      grad.push_back(term({f, Letter{eps, nu, false}}));
      grad.push_back(term({Letter{eps, nu, false}, CoefFn::constant(-1.0) * f.shifted(-eps, -nu)}));
    }
  out.push_back({"f(lam,rho) u(e,n) = u(e,n) f(q^-e lam, q^-n rho)", grad});

  // adjoints of the generators in star-free form
  Expr elim;
  elim.push_back(term({ds}));
  elim.push_back(term({a, CoefFn::constant(-1.0) * CoefFn::w_rho(1, 1) * CoefFn::w_lam(1, -1)}));
  elim.push_back(term({gs}));
  elim.push_back(term({b, CoefFn::w_rho(-1, 1) * CoefFn::w_lam(1, -1)}));
  elim.push_back(term({bs}));
  elim.push_back(term({CoefFn::w_lam(1, 1) * CoefFn::w_rho(-1, -1), g}));
  elim.push_back(term({as}));
  elim.push_back(term({CoefFn::constant(-1.0) * CoefFn::w_lam(1, 1) * CoefFn::w_rho(1, -1), d}));
  out.push_back({"delta*, gamma*, beta*, alpha* in star-free form", elim});
  for (auto& r : commutation_exprs(q)) out.push_back(std::move(r));
  return out;
}


RelationResidual shift_grading_check(const DynRep& rep, double tol) {
  RelationResidual r{"u(e,n) maps weight (lam,rho) to (q^-e lam, q^-n rho)", 0, 0, 0, 0, tol};
  for (int eps : {-1, 1})
    for (int nu : {-1, 1}) {
      const auto& m = rep.u(eps, nu).m;
      for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it) {
          if (it.value() == cplx(0)) continue;
          double dl = q_exponent(rep.lam[it.row()] / rep.lam[k], rep.q) + eps;
          double dr = q_exponent(rep.rho[it.row()] / rep.rho[k], rep.q) + nu;
          double v = std::abs(dl) + std::abs(dr);
          r.residual = std::max(r.residual, v);
          r.abs_residual = r.residual;
          ++r.columns;
        }
    }
  return r;
}

std::vector<RelationResidual> verify_dynsu2_relations(const DynRep& rep, double tol, unsigned seed) {
  std::vector<RelationResidual> out;
  for (const auto& nr : dynsu2_relation_exprs(rep.q, seed)) out.push_back(expr_residual(rep, nr.label, nr.expr, tol));
  out.push_back(shift_grading_check(rep, tol));
  return out;
}

std::array<double, 4> generator_norms(const DynRep& rep) {
  std::array<double, 4> n{};
  for (int i = 0; i < 4; ++i) n[i] = op_norm_bound(rep.gens[i]);
  return n;
}

namespace {

void check_pair(const DynRep& b1, const DynRep& b2) {
  if (b1.q != b2.q || b1.x != b2.x) throw std::invalid_argument("coproduct: bundles need equal q and x");
  if (!(b1.window == b2.window) || b1.window.dims() != 2)
    throw std::invalid_argument("coproduct: bundles need the same two-dimensional window");
}

std::array<SpMat, 4> full_tensor_images(const DynRep& b1, const DynRep& b2) {
  std::array<SpMat, 4> out;
  for (int eps : {-1, 1})
    for (int nu : {-1, 1}) {
      SpMat s;
      for (int mu : {-1, 1}) {
        SpMat k = Eigen::kroneckerProduct(b1.u(eps, mu).m, b2.u(mu, nu).m);
        s = s.size() ? SpMat(s + k) : k;
      }
      out[DynRep::gen_index(eps, nu)] = s;
    }
  return out;
}

}  // namespace

DynRep build_coproduct(const DynRep& b1, const DynRep& b2) {
  check_pair(b1, b2);
  const Window& w = b1.window;
  Window full({w.axis(0), w.axis(1), w.axis(0), w.axis(1)});
  Window matched({w.axis(0), w.axis(1), w.axis(1)});
  std::vector<Eigen::Triplet<cplx>> t;
  DynRep r;
  r.q = b1.q;
  r.x = b1.x;
  r.c = b1.c;
  r.kind = "coproduct";
  r.window = matched;
  r.lam.resize(matched.size());
  r.rho.resize(matched.size());
  for (std::size_t i = 0; i < matched.size(); ++i) {
    auto e = matched.exponents(i);
    t.emplace_back(i, full.index({e[0], e[1], e[1], e[2]}), 1.0);
    r.lam[i] = b1.lam[w.index({e[0], e[1]})];
    r.rho[i] = b2.rho[w.index({e[1], e[2]})];
  }
  SpMat P(matched.size(), full.size());
  P.setFromTriplets(t.begin(), t.end());
  auto imgs = full_tensor_images(b1, b2);
  for (int i = 0; i < 4; ++i) {
    SpMat m = (P * imgs[i] * SpMat(P.transpose())).pruned();
    r.gens[i] = WindowedOperator(matched, m, {1, 1, 1});
  }
  r.fill_lattice_exps();
  return r;
}

CoproductReport coproduct_compat_check(const DynRep& b1, const DynRep& b2, double tol) {
  CoproductReport rep;
  DynRep d = build_coproduct(b1, b2);
  rep.relations = verify_dynsu2_relations(d, tol);
  rep.norms = generator_norms(d);

  const Window& w = b1.window;
  Window full({w.axis(0), w.axis(1), w.axis(0), w.axis(1)});
  auto imgs = full_tensor_images(b1, b2);
  std::vector<cplx> support(full.size());
  DynRep loose;
  loose.q = b1.q;
  loose.x = b1.x;
  loose.c = b1.c;
  loose.kind = "coproduct without support";
  loose.window = full;
  loose.lam.resize(full.size());
  loose.rho.resize(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    auto e = full.exponents(i);
    support[i] = e[1] == e[2] ? 1.0 : 0.0;
    loose.lam[i] = b1.lam[w.index({e[0], e[1]})];
    loose.rho[i] = b2.rho[w.index({e[2], e[3]})];
  }
  auto D1 = diag_op(support, full);
  std::array<WindowedOperator, 4> g;
  for (int i = 0; i < 4; ++i) {
    loose.gens[i] = WindowedOperator(full, imgs[i], {1, 1, 1, 1});
    g[i] = loose.gens[i] * D1;
  }
  loose.fill_lattice_exps();
  auto as = adjoint(g[0]), bs = adjoint(g[1]);
  rep.support_identity = relation_residual("alpha alpha* + beta beta* = Delta(1)",
                                           {{1.0, {&g[0], &as}}, {1.0, {&g[1], &bs}}, {-1.0, {&D1}}}, 2, tol);
  rep.unrestricted_identity = relation_residual("alpha alpha* + beta beta* = 1 on the full tensor",
                                                {{1.0, {&g[0], &as}}, {1.0, {&g[1], &bs}}, {-1.0, {}}}, 2, tol);
  rep.unmatched_relations = verify_dynsu2_relations(loose, tol);
  return rep;
}

std::vector<RelationResidual> x_symmetry_check(const DynRep& b1, const DynRep& b2, double tol) {
  const Window& w1 = b1.window;
  const Window& w2 = b2.window;
  if (w1.size() != w2.size() || w1.dims() != 2 || w2.dims() != 2)
    throw std::invalid_argument("x_symmetry_check: windows must be mirrored");
  std::vector<Eigen::Triplet<cplx>> t;
  RelationResidual points{"1^y_z -> 1^{1/y}_{1/z}", 0, 0, 0, 0, tol};
  for (std::size_t i = 0; i < w1.size(); ++i) {
    auto e = w1.exponents(i);
    long j = w2.index({-e[0], -e[1]});
    if (j < 0) throw std::invalid_argument("x_symmetry_check: second window is not the mirror of the first");
    long h = e[0] - e[1];
    long fl = h >= 0 ? h / 2 : -((-h + 1) / 2);
    double sigma = (fl % 2 == 0) ? 1.0 : -1.0;
    t.emplace_back(j, i, sigma);
    double d = std::abs(q_exponent(b2.lam[j] * b1.lam[i], b1.q)) + std::abs(q_exponent(b2.rho[j] * b1.rho[i], b1.q));
    points.residual = std::max(points.residual, d);
    points.abs_residual = points.residual;
    ++points.columns;
  }
  SpMat P(w2.size(), w1.size());
  P.setFromTriplets(t.begin(), t.end());
  std::vector<RelationResidual> out{points};
  for (int eps : {-1, 1})
    for (int nu : {-1, 1}) {
      const auto& a = b1.u(eps, nu);
      SpMat m = (P * a.m * SpMat(P.transpose())).pruned();
      WindowedOperator moved(w2, m, a.shift_degree);
      std::string name = std::string("u(") + (eps < 0 ? "-" : "+") + "," + (nu < 0 ? "-" : "+") + ") -> u(" +
                         (eps < 0 ? "+" : "-") + "," + (nu < 0 ? "+" : "-") + ") on the inverted lattice";
      out.push_back(difference_residual(name, moved, b2.u(-eps, -nu), 1, tol));
    }
  return out;
}

}  // namespace pcqg
