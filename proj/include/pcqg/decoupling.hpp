#pragma once

#include <vector>

#include "pcqg/dynsu2.hpp"
#include "pcqg/uqsu11.hpp"

namespace pcqg {

// Images of the generators of the two su(1,1) copies inside a representation.
struct PhiImages {
  const DynRep* src = nullptr;
  WindowedOperator E1, F1, E2, F2, K1, K2, K1inv, K2inv;
};

PhiImages build_phi_images(const DynRep& rep);
std::vector<RelationResidual> verify_phi_relations(const PhiImages& im, double tol = kDefaultTolerance);

// (1/q - q)^2 F_i E_i - q K_i^2 - K_i^-2 / q
WindowedOperator casimir_copy(const PhiImages& im, int which);

struct OmegaReport {
  WindowedOperator omega;
  std::vector<RelationResidual> checks;  // C1 + C2 = 0, commutators with the generators
  RelationResidual scalar;               // Omega = c
};

OmegaReport casimir_omega(const PhiImages& im, double tol = kDefaultTolerance);

// Generators rebuilt from the images; matches the source representation.
std::vector<RelationResidual> phi_inverse_roundtrip(const PhiImages& im, double tol = kDefaultTolerance);

struct IrrepPair {
  CompatibleSet S;  // over Gamma_x at Casimir c
  CompatibleSet T;  // over Gamma_1 at Casimir -c
  nlohmann::json to_json() const { return {{"S", S.to_json()}, {"T", T.to_json()}}; }
};

std::vector<IrrepPair> enumerate_irreps(double q, double x, double c);

struct PiSTBundle {
  IrrepPair pair;
  UqRep piS, piT;
  DynRep rep;
  // pi_S(E) (x) 1, pi_S(F) (x) 1, 1 (x) pi_T(E), 1 (x) pi_T(F), r, s on the product window
  WindowedOperator ES, FS, ET, FT, KS, KT;
};

// Throws std::invalid_argument naming the failing condition.
PiSTBundle build_pi_ST(const IrrepPair& pair, int truncation = 24);

// Phi applied to the bundle reproduces pi_S (x) pi_T.
std::vector<RelationResidual> pi_ST_roundtrip(const PiSTBundle& b, double tol = kDefaultTolerance);

}  // namespace pcqg
