#include "pcqg/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pcqg/cset.hpp"
#include "pcqg/decoupling.hpp"
#include "pcqg/lattice.hpp"
#include "pcqg/parallel.hpp"

namespace pcqg {

namespace {

bool near_integer(double t) { return std::abs(t - std::round(t)) <= kBoundaryExponentTol; }

}  // namespace

SpectrumDescription spec_omega_closed_form(double q, double x) {
  if (!(q > 0 && q < 1) || !(x > 0)) throw std::invalid_argument("spectrum: need 0 < q < 1 and x > 0");
  SpectrumDescription sd;
  sd.q = q;
  sd.x = x;
  // x^2 = q^e; need k0 + e in [0, 1)
  double e = q_exponent(x * x, q);
  sd.k0 = near_integer(-e) ? std::lround(-e) : static_cast<long>(std::ceil(-e));
  double a = std::pow(q, sd.k0 - 1) * x * x, b = std::pow(q, sd.k0) * x * x;
  sd.c0 = -std::max(tau(a), tau(b));
  sd.right = q + 1.0 / q;
  return sd;
}

bool SpectrumDescription::contains(double c, double tol) const {
  if (c >= c0 - tol && c <= right + tol) return true;
  if (c >= 2) {
    double w = solve_wc(-c).w_c;
    return near_integer(q_exponent(w, q));
  }
  if (c <= -2) {
    double w = solve_wc(c).w_c;
    return near_integer(q_exponent(w / (x * x), q)) || near_integer(q_exponent(w * x * x, q));
  }
  return false;
}

nlohmann::json SpectrumDescription::to_json(int K) const {
  // exponents k of the discrete points outside the interval
  nlohmann::json pos = nlohmann::json::array(), neg = nlohmann::json::array();
  for (int k = 1; k <= K; ++k)
    if (tau(std::pow(q, k)) > right) pos.push_back(k);
  for (int k = -K; k <= K; ++k)
    if (-tau(x * x * std::pow(q, k)) < c0) neg.push_back(k);
  return {{"q", q},
          {"x", x},
          {"k0", k0},
          {"c0", c0},
          {"interval", {c0, right}},
          {"discrete_pos", pos},
          {"discrete_neg", neg},
          {"discrete_pos_values", "tau(q^k)"},
          {"discrete_neg_values", "-tau(x^2 q^k)"}};
}

std::vector<double> default_c_grid(const SpectrumDescription& sd, int n, int K) {
  double lo = -std::max(8.0, std::abs(sd.c0) + 2.0), hi = 8.0;
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / std::max(1, n - 1));
  for (int k = -K; k <= K; ++k) {
    g.push_back(tau(std::pow(sd.q, k)));
    g.push_back(-tau(sd.x * sd.x * std::pow(sd.q, k)));
  }
  g.push_back(sd.c0);
  g.push_back(sd.right);
  std::sort(g.begin(), g.end());
  return g;
}

std::vector<bool> spec_omega_brute_force(double q, double x, const std::vector<double>& grid) {
  std::vector<char> m(grid.size(), 0);
  parallel_for(grid.size(), [&](std::size_t i) { m[i] = !enumerate_irreps(q, x, grid[i]).empty(); });
  return {m.begin(), m.end()};
}

SpectrumComparison compare_spectrum(double q, double x, int n, int K) {
  auto sd = spec_omega_closed_form(q, x);
  auto grid = default_c_grid(sd, n, K);
  auto brute = spec_omega_brute_force(q, x, grid);
  SpectrumComparison out;
  out.checked = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (brute[i] != sd.contains(grid[i])) out.mismatches.push_back(grid[i]);
  return out;
}

}  // namespace pcqg
