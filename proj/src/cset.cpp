#include "pcqg/cset.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace pcqg {

std::string to_string(CSetKind k) {
  switch (k) {
    case CSetKind::FullOrbit: return "FullOrbit";
    case CSetKind::PlusSeries: return "PlusSeries";
    case CSetKind::MinusSeries: return "MinusSeries";
    case CSetKind::Trivial: return "Trivial";
  }
  return "?";
}

WcValue solve_wc(double c) {
  if (!(c <= -2)) throw std::domain_error("solve_wc: requires c <= -2");
  // 2/(-c + sqrt(c^2-4)) equals (-c - sqrt(c^2-4))/2 without the cancellation
  double w = 2.0 / (-c + std::sqrt(c * c - 4.0));
  return {c, std::min(w, 1.0)};
}

int adapted_sign(double c, double v, double q) {
  if (c > -2) return 1;
  double w = solve_wc(c).w_c;
  double d = (std::abs(std::log(v)) - std::abs(std::log(w))) / std::abs(std::log(q));
  if (std::abs(d) <= kBoundaryExponentTol) return 0;
  return d > 0 ? 1 : -1;
}

bool is_adapted(double z, double c, int eps, bool strict, double q) {
  int s = adapted_sign(c, std::pow(q, -eps) * z, q);
  return strict ? s > 0 : s >= 0;
}

namespace {

bool exp_equal(double a, double b, double q) {
  return std::abs(q_exponent(a / b, q)) <= kBoundaryExponentTol;
}

// Lattice points strictly/closedly inside the family interval.
std::vector<double> family_points(const OrbitFamily& f, const LatticeSpec& L) {
  const double q = L.q;
  const double tol = kBoundaryExponentTol;
  double e_lo = q_exponent(f.lo, q);  // larger exponent = smaller value
  double e_hi = q_exponent(f.hi, q);
  double b = q_exponent(L.base, q);
  const int s = L.step_denominator;
  long n0 = static_cast<long>(std::floor((e_hi - b) * s)) - 1;
  long n1 = static_cast<long>(std::ceil((e_lo - b) * s)) + 1;
  std::vector<double> out;
  for (long n = n1; n >= n0; --n) {
    double e = b + static_cast<double>(n) / s;
    bool ok_lo = f.lo_closed ? e <= e_lo + tol : e < e_lo - tol;
    bool ok_hi = f.hi_closed ? e >= e_hi - tol : e > e_hi + tol;
    if (ok_lo && ok_hi) out.push_back(L.value(n));
  }
  return out;
}

}  // namespace

bool OrbitFamily::empty(double q) const {
  double e_lo = q_exponent(lo, q), e_hi = q_exponent(hi, q);
  double width = e_lo - e_hi;
  if (lo_closed && hi_closed) return width < -kBoundaryExponentTol;
  return width <= kBoundaryExponentTol;
}

CSetClassification classify_irreducible_csets(double c, double q, const std::optional<LatticeSpec>& restrict_to) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("classify: q must lie in (0,1)");
  CSetClassification out;
  out.c = c;
  out.q = q;

  auto keep = [&](CSetKind kind, double z, const std::string& label) {
    if (restrict_to) {
      auto n = restrict_to->contains(z);
      if (!n) return;
      z = restrict_to->value(*n);
    }
    for (const auto& d : out.sets)
      if (d.kind == kind && exp_equal(d.z, z, q)) return;  // merged duplicate at c = -2
    out.sets.push_back({kind, z, c, label});
  };

  if (c > -2) {
    OrbitFamily f{q, 1.0 / q, true, false, c > 2 ? "strange" : "principal"};
    out.family = f;
    if (restrict_to)
      for (double z : family_points(f, *restrict_to)) out.sets.push_back({CSetKind::FullOrbit, z, c, f.label});
    return out;
  }

  const double w = solve_wc(c).w_c;
  OrbitFamily f{q / w, w / q, false, false, "complementary"};
  out.family = f;
  if (restrict_to && !f.empty(q))
    for (double z : family_points(f, *restrict_to)) out.sets.push_back({CSetKind::FullOrbit, z, c, f.label});

  keep(CSetKind::PlusSeries, q * w, "large positive discrete");
  keep(CSetKind::MinusSeries, 1.0 / (q * w), "large negative discrete");
  double ew = q_exponent(w, q);  // w > q  <=>  ew < 1
  if (ew < 1 - kBoundaryExponentTol) {
    keep(CSetKind::PlusSeries, q / w, "small positive discrete");
    keep(CSetKind::MinusSeries, w / q, "small negative discrete");
  } else if (std::abs(ew - 1) <= kBoundaryExponentTol) {
    keep(CSetKind::Trivial, 1.0, "trivial");
  }
  return out;
}

std::optional<long> orbit_index(double z, double anchor, double q) {
  double t = q_exponent(z / anchor, q) / 2.0;
  double k = std::round(t);
  if (std::abs(t - k) * 2.0 <= kBoundaryExponentTol) return static_cast<long>(k);
  return std::nullopt;
}

std::vector<WindowSet> brute_force_csets(double c, double q, int N, double anchor) {
  if (N < 4) throw std::invalid_argument("brute_force_csets: window exponent must be >= 4");
  auto point = [&](long k) { return anchor * std::pow(q, 2.0 * k); };
  auto adapted = [&](long k) {
    double z = point(k);
    return is_adapted(z, c, 1, false, q) && is_adapted(z, c, -1, false, q);
  };
  std::set<std::vector<long>> seen;
  std::vector<WindowSet> out;
  for (long seed = -N; seed <= N; ++seed) {
    if (!adapted(seed)) continue;
    std::set<long> members{seed};
    std::vector<long> todo{seed};
    bool limited = false, valid = true;
    while (!todo.empty() && valid) {
      long k = todo.back();
      todo.pop_back();
      double z = point(k);
      for (int eps : {1, -1}) {
        if (!is_adapted(z, c, eps, true, q)) continue;
        long nk = k + eps * -1;  // q^{-2 eps} z
        if (nk < -N || nk > N) {
          limited = true;
          continue;
        }
        if (members.count(nk)) continue;
        if (!adapted(nk)) {
          valid = false;
          break;
        }
        members.insert(nk);
        todo.push_back(nk);
      }
    }
    if (!valid) continue;
    std::vector<long> ks(members.begin(), members.end());
    if (seen.insert(ks).second) out.push_back({ks, limited});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WindowSet> classification_window_slices(const CSetClassification& cl, int N, double anchor) {
  std::vector<WindowSet> out;
  for (const auto& d : cl.sets) {
    auto k0 = orbit_index(d.z, anchor, cl.q);
    if (!k0) continue;
    long lo = -N, hi = N;
    bool limited = false;
    switch (d.kind) {
      case CSetKind::FullOrbit: limited = true; break;
      case CSetKind::PlusSeries: lo = std::max<long>(lo, *k0); limited = true; break;
      case CSetKind::MinusSeries: hi = std::min<long>(hi, *k0); limited = true; break;
      case CSetKind::Trivial: lo = std::max<long>(lo, *k0); hi = std::min<long>(hi, *k0); break;
    }
    if (lo > hi) continue;
    WindowSet s;
    for (long k = lo; k <= hi; ++k) s.ks.push_back(k);
    s.window_limited = limited;
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool same_point_sets(std::vector<WindowSet> a, std::vector<WindowSet> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].ks != b[i].ks) return false;
  return true;
}

CSetComparison compare_csets(double c, double q, int N, double anchor) {
  CSetComparison r;
  r.c = c;
  r.anchor = anchor;
  auto cl = classify_irreducible_csets(c, q, LatticeSpec(q, anchor, 1));
  r.classified = classification_window_slices(cl, N, anchor);
  r.brute = brute_force_csets(c, q, N, anchor);
  r.match = same_point_sets(r.classified, r.brute);
  return r;
}

std::vector<double> cset_c_grid(double q, int n, int K) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(-6.0 + 12.0 * i / std::max(1, n - 1));
  g.push_back(-2.0);
  g.push_back(2.0);
  for (int k = 0; k <= K; ++k)
    for (double e : {double(k), k + 0.5}) {
      double t = tau(std::pow(q, e));
      g.push_back(t);
      g.push_back(-t);
    }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

}  // namespace pcqg
