#pragma once

#include <string>
#include <vector>

#include "pcqg/cset.hpp"
#include "pcqg/window.hpp"

namespace pcqg {

// T = sqrt(Z_T) for an irreducible c-set Z_T inside y^2 q^Z.
struct CompatibleSet {
  double q = 0.5, y = 1.0, c = 0.0;
  CSetDescriptor desc;
  long z_exp = 0;  // desc.z = y^2 q^{z_exp}
  // sqrt(desc.z) as a point of y q^{Z/2}: exponent z_exp in half units
  LatticePoint anchor() const { return {LatticeSpec(q, y, 2), z_exp}; }
  double t0() const { return anchor().value(); }
  nlohmann::json to_json() const;
};

std::vector<CompatibleSet> compatible_sets(double y, double c, double q);

struct UqRep {
  double q = 0.5, y = 1.0, c = 0.0;
  bool star = true;
  std::string label;
  // axis j <-> point t0 q^j of Gamma_y
  Window window;
  long t0_gamma_exp = 0;
  WindowedOperator E, F, K, Kinv;

  double r(std::size_t idx) const { return window.value(idx, 0); }
  WindowedOperator unit(std::size_t idx) const;
  nlohmann::json to_json() const;
};

UqRep build_pi_T(const CompatibleSet& cs, int truncation = 24);
// Same construction with an explicit Casimir value, used for fault injection.
UqRep build_pi_T_with_casimir(const CompatibleSet& cs, int truncation, double c_used);
UqRep build_verma(double y, double q, int n_max);

WindowedOperator casimir_op(const UqRep& rep);
RelationResidual casimir_scalarity(const UqRep& rep, double tol = kDefaultTolerance);

std::vector<RelationResidual> verify_uqsu11_relations(const UqRep& rep, double tol = kDefaultTolerance);

}  // namespace pcqg
