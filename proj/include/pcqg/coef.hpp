#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pcqg {

// tau(q^a lam^s rho^t)^(p/2), stored with a canonical argument orientation.
struct TauFactor {
  int a = 0, s = 0, t = 0, p = 0;
  auto operator<=>(const TauFactor&) const = default;
};

// scale * q^(qpow2/2) * lam^(lam2/2) * rho^(rho2/2) * prod tau(...)^(p/2) * [lam = x q^ya][rho = x q^zb]
struct CoefFn {
  double scale = 1.0;
  int qpow2 = 0, lam2 = 0, rho2 = 0;
  std::vector<TauFactor> taus;
  std::optional<std::pair<long, long>> unit;

  static CoefFn constant(double c);
  static CoefFn tau_pow(int a, int s, int t, int p);
  static CoefFn monomial(int lam2, int rho2, double c = 1.0);
  static CoefFn projection(long ya, long zb);
  // w_eps(lam)^(p/2) or w_eps(rho)^(p/2)
  static CoefFn w_lam(int eps, int p);
  static CoefFn w_rho(int eps, int p);

  CoefFn operator*(const CoefFn& o) const;
  CoefFn& operator*=(const CoefFn& o) { return *this = *this * o; }
  // f(q^dl lam, q^dr rho)
  CoefFn shifted(int dl, int dr) const;
  // f(rho, lam)
  CoefFn swapped() const;
  bool is_zero() const { return scale == 0.0; }
  // scale multiplied out; the q power folded into scale
  double numeric_scale(double q) const;
  // Everything except scale and q power.
  bool same_shape(const CoefFn& o) const;

  // lattice exponents of (lam, rho) on Lambda_x; only needed when unit is set
  double eval(double lam, double rho, double q, const std::optional<std::pair<long, long>>& exps = std::nullopt) const;
  std::string str() const;

 private:
  void normalize();
};

// u_{eps,nu} or its adjoint; alpha = (-,-), beta = (-,+), gamma = (+,-), delta = (+,+).
struct Letter {
  int eps = -1, nu = -1;
  bool star = false;
  auto operator<=>(const Letter&) const = default;
  char name() const;
};

inline Letter alpha_l(bool star = false) { return {-1, -1, star}; }
inline Letter beta_l(bool star = false) { return {-1, 1, star}; }
inline Letter gamma_l(bool star = false) { return {1, -1, star}; }
inline Letter delta_l(bool star = false) { return {1, 1, star}; }

using Factor = std::variant<Letter, CoefFn>;

struct Term {
  std::vector<Factor> factors;
};

using Expr = std::vector<Term>;

std::string to_string(const Term& t);
std::string to_string(const Expr& e);

// Letters a b g d with ' for the adjoint and P(y,z) for the projection 1^y_z.
Term parse_word(const std::string& s);

}  // namespace pcqg
