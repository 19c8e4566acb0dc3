#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcqg/lattice.hpp"

namespace pcqg {

// Boundary hits c + tau(v) = 0 are located on the exponent scale with this tolerance.
inline constexpr double kBoundaryExponentTol = 1e-9;

enum class CSetKind { FullOrbit, PlusSeries, MinusSeries, Trivial };

std::string to_string(CSetKind k);

// Z_z = z q^{2Z}, Z^+_z = z q^{2N}, Z^-_z = z q^{-2N}, Z^0_1 = {1}.
struct CSetDescriptor {
  CSetKind kind = CSetKind::FullOrbit;
  double z = 1.0;
  double c = 0.0;
  std::string label;  // series name, informational only
};

struct WcValue {
  double c = -2.0;
  double w_c = 1.0;
};

WcValue solve_wc(double c);

// Sign (-1, 0, +1) of c + tau(v).
int adapted_sign(double c, double v, double q);

bool is_adapted(double z, double c, int eps, bool strict, double q);

// Open/closed interval of orbit representatives z of a continuous family of full orbits.
struct OrbitFamily {
  double lo = 0, hi = 0;
  bool lo_closed = false, hi_closed = false;
  std::string label;
  bool empty(double q) const;
};

struct CSetClassification {
  double c = 0, q = 0.5;
  std::optional<OrbitFamily> family;
  // Series, trivial sets and (under a lattice restriction) the family representatives.
  std::vector<CSetDescriptor> sets;
};

CSetClassification classify_irreducible_csets(double c, double q,
                                              const std::optional<LatticeSpec>& restrict_to = std::nullopt);

// A point set inside the window {anchor q^{2k} : |k| <= N}, listed by k.
struct WindowSet {
  std::vector<long> ks;
  bool window_limited = false;
  bool operator<(const WindowSet& o) const { return ks < o.ks; }
};

std::vector<WindowSet> brute_force_csets(double c, double q, int N, double anchor);

// Intersections of the descriptors of a lattice-restricted classification with the same window.
std::vector<WindowSet> classification_window_slices(const CSetClassification& cl, int N, double anchor);

// Point sets compared exactly (window-limited flags ignored).
bool same_point_sets(std::vector<WindowSet> a, std::vector<WindowSet> b);

struct CSetComparison {
  double c = 0, anchor = 1;
  std::vector<WindowSet> classified, brute;
  bool match = false;
};

// Classifier restricted to anchor q^Z, sliced to the window, against the brute-force search.
CSetComparison compare_csets(double c, double q, int N, double anchor);

// n uniform points in [-6, 6] plus c = -2, 2 and +-tau(q^k), +-tau(q^{k+1/2}) for 0 <= k <= K.
std::vector<double> cset_c_grid(double q, int n = 200, int K = 12);

// Exponent of z along the orbit anchor q^{2Z}, if z lies on it.
std::optional<long> orbit_index(double z, double anchor, double q);

}  // namespace pcqg
