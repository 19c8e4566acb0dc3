#pragma once

#include <vector>

#include "json.hpp"

namespace pcqg {

// Spectrum of the Casimir over the representations on x q^Z: an interval
// [c0, q + 1/q] plus discrete points tau(q^k) and -tau(x^2 q^k).
struct SpectrumDescription {
  double q = 0.5, x = 1.0;
  long k0 = 0;  // q < q^k0 x^2 <= 1
  double c0 = -2.0;
  double right = 2.5;

  bool contains(double c, double tol = 1e-9) const;
  nlohmann::json to_json(int K = 12) const;
};

SpectrumDescription spec_omega_closed_form(double q, double x);

// n evenly spaced points over [-max(8, |c0| + 2), 8] plus the discrete points with |k| <= K.
std::vector<double> default_c_grid(const SpectrumDescription& sd, int n = 400, int K = 12);

// Membership by exhibiting an irreducible pair at each c.
std::vector<bool> spec_omega_brute_force(double q, double x, const std::vector<double>& grid);

struct SpectrumComparison {
  std::size_t checked = 0;
  std::vector<double> mismatches;
  nlohmann::json to_json() const { return {{"checked", checked}, {"mismatches", mismatches}}; }
};

SpectrumComparison compare_spectrum(double q, double x, int n = 400, int K = 12);

}  // namespace pcqg
