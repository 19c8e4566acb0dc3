#include "pcqg/antipode.hpp"

namespace pcqg {

namespace {

CoefFn star_coefficient(int eps, int nu) {
  // u*_{e,n} = u_{-e,-n} * e n w_n(rho)^1/2 / w_e(lam)^1/2
  return CoefFn::constant(static_cast<double>(eps * nu)) * CoefFn::w_rho(nu, 1) * CoefFn::w_lam(eps, -1);
}

std::string gen_name(int eps, int nu) {
  return std::string("u(") + (eps < 0 ? "-" : "+") + "," + (nu < 0 ? "-" : "+") + ")";
}

}  // namespace

Term star_free(const Term& t) {
  Term out;
  for (const auto& f : t.factors) {
    const auto* l = std::get_if<Letter>(&f);
    if (!l || !l->star) {
      out.factors.push_back(f);
      continue;
    }
    out.factors.push_back(Letter{-l->eps, -l->nu, false});
    out.factors.push_back(star_coefficient(l->eps, l->nu));
  }
  return out;
}

Expr star_free(const Expr& e) {
  Expr out;
  for (const auto& t : e) out.push_back(star_free(t));
  return out;
}

Term antipode(const Term& t, bool literal_swap) {
  Term src = star_free(t);
  Term out;
  for (auto it = src.factors.rbegin(); it != src.factors.rend(); ++it) {
    if (const auto* g = std::get_if<CoefFn>(&*it)) {
      out.factors.push_back(g->swapped());
      continue;
    }
    const Letter& l = std::get<Letter>(*it);
    if (literal_swap) {
      out.factors.push_back(Letter{l.nu, l.eps, false});
    } else {
      // u*_{n,e} in star-free form
      out.factors.push_back(Letter{-l.nu, -l.eps, false});
      out.factors.push_back(star_coefficient(l.nu, l.eps));
    }
  }
  return out;
}

Expr antipode(const Expr& e, bool literal_swap) {
  Expr out;
  for (const auto& t : e) out.push_back(antipode(t, literal_swap));
  return out;
}

AntipodeReport antipode_check(const DynRep& rep, double tol, unsigned seed) {
  AntipodeReport r;
  for (const auto& nr : dynsu2_relation_exprs(rep.q, seed)) {
    r.transformed.push_back(expr_residual(rep, "S(" + nr.label + ")", antipode(nr.expr), tol));
    r.literal_swap.push_back(expr_residual(rep, "literal swap S(" + nr.label + ")", antipode(nr.expr, true), tol));
  }
  for (int eps : {-1, 1})
    for (int nu : {-1, 1}) {
      Term u{{Letter{eps, nu, false}}};
      Term uswap_star{{Letter{nu, eps, true}}};
      r.corep.push_back(expr_difference(rep, "S(" + gen_name(eps, nu) + ") = " + gen_name(nu, eps) + "*",
                                        Expr{antipode(u)}, Expr{uswap_star}, tol));
      Term rhs{{CoefFn::w_lam(eps, 2) * CoefFn::w_rho(nu, -2), Letter{eps, nu, false}}};
      r.square.push_back(expr_difference(rep, "S^2(" + gen_name(eps, nu) + ") = w_e(lam)/w_n(rho) " + gen_name(eps, nu),
                                         Expr{antipode(antipode(u))}, Expr{rhs}, tol));
    }
  return r;
}

}  // namespace pcqg
