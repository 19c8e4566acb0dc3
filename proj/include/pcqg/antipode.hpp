#pragma once

#include <vector>

#include "pcqg/coef.hpp"
#include "pcqg/dynsu2.hpp"

namespace pcqg {

// Adjoint letters replaced by u_{-e,-n} followed by their coefficient function; order kept.
Term star_free(const Term& t);
Expr star_free(const Expr& e);

// Anti-multiplicative map with S(u_{e,n}) = u*_{n,e} (written star-free) and S(f)(lam,rho) = f(rho,lam).
// With `literal_swap` the letters go to u_{n,e} instead, which is not compatible with the relations.
Term antipode(const Term& t, bool literal_swap = false);
Expr antipode(const Expr& e, bool literal_swap = false);

struct AntipodeReport {
  std::vector<RelationResidual> transformed;   // S applied to every relation
  std::vector<RelationResidual> corep;         // pi(S(u_{e,n})) = pi(u_{n,e})^*
  std::vector<RelationResidual> square;        // S^2(u_{e,n}) = (w_e(lam)/w_n(rho)) u_{e,n}
  std::vector<RelationResidual> literal_swap;  // relations under the literal swap; expected to fail
  bool pass() const { return all_pass(transformed) && all_pass(corep) && all_pass(square); }
};

AntipodeReport antipode_check(const DynRep& rep, double tol = kDefaultTolerance, unsigned seed = 7);

}  // namespace pcqg
