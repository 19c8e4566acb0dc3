#pragma once

#include <array>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcqg/coef.hpp"
#include "pcqg/window.hpp"

namespace pcqg {

struct DynParams {
  double q = 0.5;
  double x = 1.0;
  double c = 0.0;
};

// A representation of the dynamical SU(2) algebra on a window: the four generators
// and, per basis vector, the values of lam and rho.
struct DynRep {
  double q = 0.5, x = 1.0, c = 0.0;
  std::string kind;
  Window window;
  std::vector<double> lam, rho;
  // (lam, rho) as exponents on x q^Z, when they lie on it
  std::vector<std::optional<std::pair<long, long>>> lattice_exps;
  std::array<WindowedOperator, 4> gens;  // alpha, beta, gamma, delta
  bool truncated = true;

  static int gen_index(int eps, int nu) { return (eps > 0 ? 2 : 0) + (nu > 0 ? 1 : 0); }
  const WindowedOperator& u(int eps, int nu) const { return gens[gen_index(eps, nu)]; }
  const WindowedOperator& alpha() const { return gens[0]; }
  const WindowedOperator& beta() const { return gens[1]; }
  const WindowedOperator& gamma() const { return gens[2]; }
  const WindowedOperator& delta() const { return gens[3]; }

  WindowedOperator fn(const CoefFn& f) const;
  void fill_lattice_exps();
  nlohmann::json to_json(bool with_matrices = true) const;
};

// Weight of u_{eps,nu} on e_y (x) e_z in the concrete representation with parameter c.
double pi_c_weight(double q, double c, int eps, int nu, double y, double z);

Window default_pi_c_window(double q, double x, long half_width = 10);
DynRep build_pi_c(const DynParams& p, const Window& w);
DynRep build_pi_c(const DynParams& p, long half_width = 10);

// Operators for the letters and coefficient functions of an expression.
class ExprEvaluator {
 public:
  explicit ExprEvaluator(const DynRep& rep) : rep_(rep) {}
  std::vector<RelationTerm> terms(const Expr& e, cplx overall = 1.0);
  const WindowedOperator& letter(const Letter& l);
  const WindowedOperator& function(const CoefFn& f);

 private:
  const DynRep& rep_;
  std::map<Letter, WindowedOperator> letters_;
  std::deque<WindowedOperator> store_;
};

RelationResidual expr_residual(const DynRep& rep, const std::string& label, const Expr& e, double tol = kDefaultTolerance,
                               int margin = -1);
// Residual of a - b.
RelationResidual expr_difference(const DynRep& rep, const std::string& label, const Expr& a, const Expr& b,
                                 double tol = kDefaultTolerance);

struct NamedRelation {
  std::string label;
  Expr expr;  // expression that vanishes
};

// The relations checked on every representation, as vanishing expressions; seed picks the
// test function of the grading relation.
std::vector<NamedRelation> dynsu2_relation_exprs(double q, unsigned seed = 7);

// Structural check: u_{eps,nu} maps (lam, rho) to (q^-eps lam, q^-nu rho).
RelationResidual shift_grading_check(const DynRep& rep, double tol = kDefaultTolerance);

std::vector<RelationResidual> verify_dynsu2_relations(const DynRep& rep, double tol = kDefaultTolerance,
                                                      unsigned seed = 7);

// Largest singular value of each generator.
std::array<double, 4> generator_norms(const DynRep& rep);

struct CoproductReport {
  std::vector<RelationResidual> relations;  // on the matched-middle subspace
  RelationResidual support_identity;        // alpha alpha* + beta beta* = Delta(1) on the full tensor
  RelationResidual unrestricted_identity;   // alpha alpha* + beta beta* = 1 on the full tensor; fails
  // relations of sum_mu u (x) u without the Delta(1) cut-off; the adjoint formula fails there
  std::vector<RelationResidual> unmatched_relations;
  std::array<double, 4> norms{};
  bool pass() const { return all_pass(relations) && support_identity.pass(); }
};

// Images sum_mu u_{eps,mu} (x) u_{mu,nu} on the subspace of matched middle index.
DynRep build_coproduct(const DynRep& b1, const DynRep& b2);
CoproductReport coproduct_compat_check(const DynRep& b1, const DynRep& b2, double tol = kDefaultTolerance);

// b2 must be built over Lambda_{1/x} on the mirrored window of b1.
std::vector<RelationResidual> x_symmetry_check(const DynRep& b1, const DynRep& b2, double tol = kDefaultTolerance);

}  // namespace pcqg
