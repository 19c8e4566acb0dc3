#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pcqg/groupoid.hpp"

namespace pcqg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Finite-dimensional *-algebra with real structure constants, a unit family 1^k_l and a
// coproduct. Elements are coefficient vectors on the basis.
struct FinitePQG {
  using Sparse = std::vector<std::pair<int, double>>;

  std::string name;
  std::vector<std::string> objects, basis;
  std::vector<Sparse> prod;  // prod[i * d + j]: e_i e_j as (k, coefficient)
  Mat star;                  // column j: e_j^*
  std::vector<Vec> units;    // units[k * n + l] = 1^k_l
  std::vector<Sparse> cop;   // cop[i]: Delta(e_i) as (j * d + k, coefficient) for e_j (x) e_k

  int dim() const { return static_cast<int>(basis.size()); }
  int n_obj() const { return static_cast<int>(objects.size()); }
  const Vec& unit(int k, int l) const { return units[k * n_obj() + l]; }
  bool unit_nonzero(int k, int l) const;
  Vec e(int i) const;
  Vec one() const;

  Vec mul(const Vec& a, const Vec& b) const;
  Mat left_matrix(const Vec& a) const;
  Vec adj(const Vec& a) const { return star * a; }
  // Delta(a) in A (x) A, index j * d + k.
  Vec delta(const Vec& a) const;
  // Product in A (x) A.
  Vec mul2(const Vec& x, const Vec& y) const;
  // a |-> u a u for u = 1^k_l.
  Mat compression(int k, int l) const;
  // lambda_k = sum_m 1^k_m, rho_m = sum_k 1^k_m
  Vec lambda(int k) const;
  Vec rho(int m) const;

  nlohmann::json to_json() const;
  static FinitePQG from_json(const nlohmann::json& j);
};

FinitePQG from_category_functions(const CategoryData& c);
FinitePQG from_finite_groupoid_functions(const GroupoidData& g);
FinitePQG from_finite_groupoid_algebra(const GroupoidData& g);

struct AxiomResult {
  std::string name;
  bool pass = false;
  double residual = 0;
  std::string detail;
  std::vector<double> witness;
  nlohmann::json to_json() const;
};

struct AxiomReport {
  std::vector<AxiomResult> axioms;  // associativity, star, Delta, U1, U2, U3, C, D1, D2
  // k ~ l iff 1^k_l != 0; reported independently of (D2)
  bool reflexive = false, symmetric = false, transitive = false;
  bool equivalence() const { return reflexive && symmetric && transitive; }
  const AxiomResult& get(const std::string& name) const;
  bool all_pass() const;
  std::vector<std::string> failing() const;
  nlohmann::json to_json() const;
};

// Rank cutoff relative to the largest singular value.
inline constexpr double kRankCutoff = 1e-10;

AxiomReport verify_axioms(const FinitePQG& G);

// Functional a |-> w . a, homogeneous of degree (k, m, l, n); zero marks the zero functional.
struct GradedFunctional {
  Vec w;
  int k = 0, m = 0, l = 0, n = 0;
  bool zero = false;
  double operator()(const Vec& a) const { return w.dot(a); }
};

// Largest |omega(a) - omega(1^k_m a 1^l_n)| over basis elements.
double support_defect(const FinitePQG& G, const GradedFunctional& f);
GradedFunctional convolve(const FinitePQG& G, const GradedFunctional& chi, const GradedFunctional& omega);
GradedFunctional trace_state(const FinitePQG& G, int k, int m);
// Faithful state a |-> tau(b a) / tau(b) with b = u + r* r, r random in the corner.
GradedFunctional random_state(const FinitePQG& G, int k, int m, unsigned seed);

struct HaarFamily {
  std::string method;
  std::string status;  // "ok", "unique", "no solution", "non-unique", "not converged"
  std::vector<std::optional<Vec>> phi;  // index k * n + m, empty where 1^k_m = 0
  double i1_residual = 0;
  double invariance_residual = 0;  // both invariance equations, all k, l, basis a
  long rank = 0, unknowns = 0;
  double system_residual = 0;
  double left_right_gap = 0;  // linear solve: left-only vs right-only family
  int iterations = 0;         // Cesaro: doubling steps
  std::vector<double> trace;  // Cesaro: residual after each step
  bool ok() const { return status == "ok" || status == "unique"; }
  nlohmann::json to_json(const FinitePQG& G) const;
};

struct CesaroOptions {
  int max_doublings = 60;
  double tol = 1e-10;
  bool random_seed_states = false;
  unsigned seed = 1;
};

HaarFamily haar_cesaro(const FinitePQG& G, const CesaroOptions& opt = {});
HaarFamily haar_linear_solve(const FinitePQG& G);
// Invariance residual of an arbitrary family.
double invariance_residual(const FinitePQG& G, const std::vector<std::optional<Vec>>& phi);
double family_distance(const HaarFamily& a, const HaarFamily& b);

// Entries X_ij in A; basis vector i of H lies in H^{row[i]}_{col[i]}.
struct BigradedRep {
  std::vector<int> row, col;
  std::vector<Vec> X;  // X[i * dim + j]
  std::string label;
  int dim() const { return static_cast<int>(row.size()); }
  const Vec& at(int i, int j) const { return X[i * dim() + j]; }
  Vec& at(int i, int j) { return X[i * dim() + j]; }
};

BigradedRep trivial_rep(const FinitePQG& G);
BigradedRep tensor_reps(const FinitePQG& G, const BigradedRep& X, const BigradedRep& Y);
// X_ij = sum_{g in G(k_i, k_j)} pi(g)_ij delta_g on the function algebra, diagonal bigrading.
BigradedRep groupoid_rep_functions(const GroupoidData& g, const GroupoidRep& r);

struct RepReport {
  double co1 = 0, co2 = 0, unitary_left = 0, unitary_right = 0;
  double tol = 1e-10;
  bool pass() const { return co1 < tol && co2 < tol && unitary_left < tol && unitary_right < tol; }
  nlohmann::json to_json() const;
};

RepReport verify_rep(const FinitePQG& G, const BigradedRep& X);
double rep_distance(const BigradedRep& a, const BigradedRep& b);

struct NamedInstance {
  std::string name;
  FinitePQG G;
  bool commutative_groupoid = false;
  std::optional<GroupoidData> groupoid;
};

// Groupoid instances in both forms and the Raum instance.
std::vector<NamedInstance> instance_library();
// Haar family given by the uniform measure on each G(k, m), function-algebra form.
std::vector<std::optional<Vec>> uniform_haar_oracle(const GroupoidData& g);

}  // namespace pcqg
