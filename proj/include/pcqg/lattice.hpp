#pragma once

#include <optional>

namespace pcqg {

// v + 1/v, defined for v > 0.
double tau(double v);

// tau(q^eps v) / tau(v); eps is +1 or -1.
double weight_w(double v, int eps, double q);

// The lattice base * q^(Z / step_denominator).
struct LatticeSpec {
  double q = 0.5;
  double base = 1.0;
  int step_denominator = 1;

  LatticeSpec() = default;
  LatticeSpec(double q_, double base_, int step = 1);

  double value(long n) const;
  // Exponent n with |log(v/base)/log(q) - n/step| < rel_tol, if any.
  std::optional<long> contains(double v, double rel_tol = 1e-9) const;

  bool operator==(const LatticeSpec&) const = default;
};

struct LatticePoint {
  LatticeSpec spec;
  long n = 0;
  double value() const { return spec.value(n); }
};

// log(v) / log(q): the real exponent of v on the q-scale.
double q_exponent(double v, double q);

}  // namespace pcqg
