#include "pcqg/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace pcqg {

double tau(double v) {
  if (!(v > 0)) throw std::domain_error("tau: argument must be positive");
  return v + 1.0 / v;
}

double weight_w(double v, int eps, double q) {
  if (!(v > 0)) throw std::domain_error("weight_w: argument must be positive");
  if (eps != 1 && eps != -1) throw std::invalid_argument("weight_w: eps must be +1 or -1");
  return tau(std::pow(q, eps) * v) / tau(v);
}

LatticeSpec::LatticeSpec(double q_, double base_, int step) : q(q_), base(base_), step_denominator(step) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("LatticeSpec: q must lie in (0,1)");
  if (!(base > 0)) throw std::invalid_argument("LatticeSpec: base must be positive");
  if (step != 1 && step != 2) throw std::invalid_argument("LatticeSpec: step denominator must be 1 or 2");
}

double LatticeSpec::value(long n) const {
  return base * std::pow(q, static_cast<double>(n) / step_denominator);
}

std::optional<long> LatticeSpec::contains(double v, double rel_tol) const {
  if (!(v > 0)) return std::nullopt;
  double t = std::log(v / base) / std::log(q);
  double n = std::round(t * step_denominator);
  if (std::abs(t - n / step_denominator) < rel_tol) return static_cast<long>(n);
  return std::nullopt;
}

double q_exponent(double v, double q) { return std::log(v) / std::log(q); }

}  // namespace pcqg
