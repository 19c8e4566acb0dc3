#include "pcqg/window.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcqg {

Window::Window(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw std::invalid_argument("Window: needs at least one axis");
  strides_.assign(axes_.size(), 1);
  size_ = 1;
  for (std::size_t i = axes_.size(); i-- > 0;) {
    if (axes_[i].nmax < axes_[i].nmin) throw std::invalid_argument("Window: empty axis");
    strides_[i] = size_;
    size_ *= static_cast<std::size_t>(axes_[i].size());
  }
}

std::vector<long> Window::exponents(std::size_t idx) const {
  std::vector<long> ex(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    ex[i] = axes_[i].nmin + static_cast<long>(idx / strides_[i]);
    idx %= strides_[i];
  }
  return ex;
}

long Window::index(const std::vector<long>& ex) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (ex[i] < axes_[i].nmin || ex[i] > axes_[i].nmax) return -1;
    idx += static_cast<std::size_t>(ex[i] - axes_[i].nmin) * strides_[i];
  }
  return static_cast<long>(idx);
}

double Window::value(std::size_t idx, std::size_t ax) const {
  long n = axes_[ax].nmin + static_cast<long>((idx / strides_[ax]) % static_cast<std::size_t>(axes_[ax].size()));
  return axes_[ax].spec.value(n);
}

std::vector<LatticePoint> Window::points(std::size_t idx) const {
  auto ex = exponents(idx);
  std::vector<LatticePoint> pts;
  for (std::size_t i = 0; i < axes_.size(); ++i) pts.push_back({axes_[i].spec, ex[i]});
  return pts;
}

bool Window::interior(std::size_t idx, int margin) const {
  auto ex = exponents(idx);
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].lo_artificial && ex[i] - axes_[i].nmin < margin) return false;
    if (axes_[i].hi_artificial && axes_[i].nmax - ex[i] < margin) return false;
  }
  return true;
}

std::size_t Window::interior_count(int margin) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < size_; ++i) n += interior(i, margin);
  return n;
}

nlohmann::json Window::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& a : axes_)
    j.push_back({{"q", a.spec.q},
                 {"base", a.spec.base},
                 {"step_denominator", a.spec.step_denominator},
                 {"n_min", a.nmin},
                 {"n_max", a.nmax},
                 {"lo_artificial", a.lo_artificial},
                 {"hi_artificial", a.hi_artificial}});
  return j;
}

Axis centered_axis(double q, double base, long half_width, int step) {
  return Axis{LatticeSpec(q, base, step), -half_width, half_width, true, true};
}

WindowedOperator::WindowedOperator(Window w, SpMat mat, std::vector<int> degree)
    : window(std::move(w)), m(std::move(mat)), shift_degree(std::move(degree)) {
  if (static_cast<std::size_t>(m.rows()) != window.size() || static_cast<std::size_t>(m.cols()) != window.size())
    throw std::invalid_argument("WindowedOperator: matrix size does not match window");
  if (shift_degree.size() != window.dims()) throw std::invalid_argument("WindowedOperator: degree rank mismatch");
  m.makeCompressed();
}

WindowedOperator WindowedOperator::zero(const Window& w) {
  SpMat z(w.size(), w.size());
  return WindowedOperator(w, z, std::vector<int>(w.dims(), 0));
}

WindowedOperator WindowedOperator::identity(const Window& w) {
  SpMat id(w.size(), w.size());
  id.setIdentity();
  return WindowedOperator(w, id, std::vector<int>(w.dims(), 0));
}

std::vector<int> WindowedOperator::measured_shift() const {
  std::vector<int> out(window.dims(), 0);
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it) {
      if (it.value() == cplx(0)) continue;
      auto a = window.exponents(it.row()), b = window.exponents(it.col());
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(out[i], static_cast<int>(std::abs(a[i] - b[i])));
    }
  return out;
}

nlohmann::json WindowedOperator::to_json() const {
  std::vector<std::tuple<long, long, double, double>> es;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it)
      if (it.value() != cplx(0)) es.emplace_back(it.row(), it.col(), it.value().real(), it.value().imag());
  std::sort(es.begin(), es.end());
  nlohmann::json entries = nlohmann::json::array();
  for (auto& [r, c, re, im] : es) entries.push_back({r, c, re, im});
  return {{"window", window.to_json()}, {"shift_degree", shift_degree}, {"entries", entries}};
}

WindowedOperator mul_op(const PointFn& f, const Window& w) {
  std::vector<cplx> v(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) v[i] = f(w.points(i));
  return diag_op(v, w);
}

WindowedOperator diag_op(const std::vector<cplx>& values, const Window& w) {
  if (values.size() != w.size()) throw std::invalid_argument("diag_op: size mismatch");
  std::vector<Eigen::Triplet<cplx>> t;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] != cplx(0)) t.emplace_back(i, i, values[i]);
  SpMat m(w.size(), w.size());
  m.setFromTriplets(t.begin(), t.end());
  return WindowedOperator(w, m, std::vector<int>(w.dims(), 0));
}

WindowedOperator shift_op(const PointFn& weight, const std::vector<long>& d, const Window& w) {
  if (d.size() != w.dims()) throw std::invalid_argument("shift_op: displacement rank mismatch");
  std::vector<Eigen::Triplet<cplx>> t;
  std::vector<int> deg(w.dims());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (std::abs(d[i]) >= w.axis(i).size() && w.axis(i).size() > 1)
      throw std::invalid_argument("shift_op: displacement exceeds window span");
    deg[i] = static_cast<int>(std::abs(d[i]));
  }
  for (std::size_t p = 0; p < w.size(); ++p) {
    auto ex = w.exponents(p);
    for (std::size_t i = 0; i < ex.size(); ++i) ex[i] += d[i];
    long r = w.index(ex);
    if (r < 0) continue;
    cplx val = weight(w.points(p));
    if (val != cplx(0)) t.emplace_back(r, p, val);
  }
  SpMat m(w.size(), w.size());
  m.setFromTriplets(t.begin(), t.end());
  return WindowedOperator(w, m, deg);
}

namespace {
void same_window(const WindowedOperator& a, const WindowedOperator& b) {
  if (!(a.window == b.window)) throw std::invalid_argument("operators live on different windows");
}
}  // namespace

WindowedOperator compose(const WindowedOperator& a, const WindowedOperator& b) {
  same_window(a, b);
  std::vector<int> deg(a.shift_degree.size());
  for (std::size_t i = 0; i < deg.size(); ++i) deg[i] = a.shift_degree[i] + b.shift_degree[i];
  SpMat p = (a.m * b.m).pruned();
  return WindowedOperator(a.window, p, deg);
}

WindowedOperator add(const WindowedOperator& a, const WindowedOperator& b) {
  same_window(a, b);
  std::vector<int> deg(a.shift_degree.size());
  for (std::size_t i = 0; i < deg.size(); ++i) deg[i] = std::max(a.shift_degree[i], b.shift_degree[i]);
  SpMat s = a.m + b.m;
  return WindowedOperator(a.window, s, deg);
}

WindowedOperator scale(cplx s, const WindowedOperator& a) {
  SpMat m = a.m * s;
  return WindowedOperator(a.window, m, a.shift_degree);
}

WindowedOperator adjoint(const WindowedOperator& a) {
  SpMat m = a.m.adjoint();
  return WindowedOperator(a.window, m, a.shift_degree);
}

WindowedOperator operator*(const WindowedOperator& a, const WindowedOperator& b) { return compose(a, b); }
WindowedOperator operator+(const WindowedOperator& a, const WindowedOperator& b) { return add(a, b); }
WindowedOperator operator-(const WindowedOperator& a, const WindowedOperator& b) { return add(a, scale(-1.0, b)); }
WindowedOperator operator*(cplx s, const WindowedOperator& a) { return scale(s, a); }

nlohmann::json RelationResidual::to_json() const {
  return {{"relation", label}, {"residual", residual}, {"abs_residual", abs_residual}, {"margin", margin},
          {"columns", columns},  {"tolerance", tolerance}, {"pass", pass()}};
}

int required_margin(const std::vector<RelationTerm>& terms) {
  int need = 0;
  for (const auto& t : terms) {
    if (t.word.empty()) continue;
    std::vector<int> sum(t.word.front()->shift_degree.size(), 0);
    for (auto* op : t.word)
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += op->shift_degree[i];
    for (int s : sum) need = std::max(need, s);
  }
  return need;
}

RelationResidual relation_residual(const std::string& label, const std::vector<RelationTerm>& terms, int margin,
                                   double tol) {
  const WindowedOperator* any = nullptr;
  for (const auto& t : terms)
    for (auto* op : t.word) {
      if (any && !(any->window == op->window)) throw std::invalid_argument("relation_residual: mixed windows");
      any = op;
    }
  if (!any) throw std::invalid_argument("relation_residual: needs at least one operator");
  int need = required_margin(terms);
  if (margin < need)
    throw std::invalid_argument("relation_residual: margin " + std::to_string(margin) + " below word shift degree " +
                                std::to_string(need) + " for " + label);
  const Window& w = any->window;
  const std::size_t n = w.size();
  std::vector<SpMat> mats;
  for (const auto& t : terms) {
    SpMat m(n, n);
    if (t.word.empty()) {
      m.setIdentity();
    } else {
      m = t.word.back()->m;
      for (std::size_t i = t.word.size() - 1; i-- > 0;) m = (t.word[i]->m * m).pruned();
    }
    mats.push_back(m * t.coef);
  }
  SpMat total(n, n);
  for (auto& m : mats) total += m;

  std::vector<double> scale_col(n, 0.0);
  for (auto& m : mats)
    for (int k = 0; k < m.outerSize(); ++k) {
      double s = 0;
      for (SpMat::InnerIterator it(m, k); it; ++it) s += std::norm(it.value());
      scale_col[k] += std::sqrt(s);
    }
  RelationResidual r;
  r.label = label;
  r.margin = margin;
  r.tolerance = tol;
  for (int k = 0; k < total.outerSize(); ++k) {
    if (!w.interior(k, margin)) continue;
    ++r.columns;
    double s = 0;
    for (SpMat::InnerIterator it(total, k); it; ++it) s += std::norm(it.value());
    s = std::sqrt(s);
    r.abs_residual = std::max(r.abs_residual, s);
    r.residual = std::max(r.residual, s / std::max(1.0, scale_col[k]));
  }
  return r;
}

RelationResidual difference_residual(const std::string& label, const WindowedOperator& a, const WindowedOperator& b,
                                     int margin, double tol) {
  return relation_residual(label, {{1.0, {&a}}, {-1.0, {&b}}}, margin, tol);
}

double op_norm_bound(const WindowedOperator& a) {
  const SpMat& m = a.m;
  const std::size_t n = a.window.size();
  std::vector<int> rows(n, 0), cols(n, 0);
  double maxabs = 0;
  bool pure_shift = true;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it) {
      if (it.value() == cplx(0)) continue;
      if (++rows[it.row()] > 1 || ++cols[it.col()] > 1) pure_shift = false;
      maxabs = std::max(maxabs, std::abs(it.value()));
    }
  // at most one nonzero per row and column: the singular values are the entry moduli
  if (pure_shift) return maxabs;
  if (n <= 2500) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd(SpMat(m.adjoint() * m));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return n ? std::sqrt(std::max(0.0, es.eigenvalues()(n - 1))) : 0.0;
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n) / std::sqrt(static_cast<double>(n));
  double est = 0;
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXcd w = m.adjoint() * (m * v);
    double nw = w.norm();
    if (nw == 0) return 0;
    double next = std::sqrt(nw);
    v = w / nw;
    if (std::abs(next - est) < 1e-15 * next) {
      est = next;
      break;
    }
    est = next;
  }
  return est;
}

bool all_pass(const std::vector<RelationResidual>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const RelationResidual& r) { return r.pass(); });
}

}  // namespace pcqg
