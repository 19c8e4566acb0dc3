#pragma once

#include <Eigen/Sparse>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pcqg/lattice.hpp"

namespace pcqg {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;

// One lattice axis of a window. An edge is artificial when the underlying index set
// continues past it; relation checks keep their distance from artificial edges only.
struct Axis {
  LatticeSpec spec;
  long nmin = 0, nmax = 0;
  bool lo_artificial = true, hi_artificial = true;

  long size() const { return nmax - nmin + 1; }
  bool operator==(const Axis&) const = default;
};

// Product of axes with lexicographic basis ordering (first axis slowest).
class Window {
 public:
  Window() = default;
  explicit Window(std::vector<Axis> axes);

  std::size_t dims() const { return axes_.size(); }
  std::size_t size() const { return size_; }
  const Axis& axis(std::size_t i) const { return axes_.at(i); }
  const std::vector<Axis>& axes() const { return axes_; }

  std::vector<long> exponents(std::size_t idx) const;
  // Index of the point with the given exponents, or -1 when outside.
  long index(const std::vector<long>& ex) const;
  double value(std::size_t idx, std::size_t ax) const;
  std::vector<LatticePoint> points(std::size_t idx) const;
  // Distance >= margin from every artificial edge.
  bool interior(std::size_t idx, int margin) const;
  std::size_t interior_count(int margin) const;

  bool operator==(const Window& o) const { return axes_ == o.axes_; }
  nlohmann::json to_json() const;

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

// Symmetric window around base on a single axis, both edges artificial.
Axis centered_axis(double q, double base, long half_width, int step = 1);

struct WindowedOperator {
  Window window;
  SpMat m;
  std::vector<int> shift_degree;  // nominal maximal exponent displacement per axis

  WindowedOperator() = default;
  WindowedOperator(Window w, SpMat mat, std::vector<int> degree);

  static WindowedOperator zero(const Window& w);
  static WindowedOperator identity(const Window& w);

  cplx entry(std::size_t row, std::size_t col) const { return m.coeff(row, col); }
  // Largest actual displacement of a nonzero entry, per axis.
  std::vector<int> measured_shift() const;
  nlohmann::json to_json() const;
};

using PointFn = std::function<cplx(const std::vector<LatticePoint>&)>;

WindowedOperator mul_op(const PointFn& f, const Window& w);
WindowedOperator diag_op(const std::vector<cplx>& values, const Window& w);
WindowedOperator shift_op(const PointFn& weight, const std::vector<long>& displacement, const Window& w);

WindowedOperator compose(const WindowedOperator& a, const WindowedOperator& b);
WindowedOperator add(const WindowedOperator& a, const WindowedOperator& b);
WindowedOperator scale(cplx s, const WindowedOperator& a);
WindowedOperator adjoint(const WindowedOperator& a);
WindowedOperator operator*(const WindowedOperator& a, const WindowedOperator& b);
WindowedOperator operator+(const WindowedOperator& a, const WindowedOperator& b);
WindowedOperator operator-(const WindowedOperator& a, const WindowedOperator& b);
WindowedOperator operator*(cplx s, const WindowedOperator& a);

struct RelationTerm {
  cplx coef = 1.0;
  std::vector<const WindowedOperator*> word;  // applied right to left; empty word = identity
};

struct RelationResidual {
  std::string label;
  // max over interior columns of |sum| / max(1, sum of term column norms)
  double residual = 0;
  // max over interior columns of |sum|
  double abs_residual = 0;
  int margin = 0;
  std::size_t columns = 0;
  double tolerance = 1e-10;
  bool pass() const { return residual < tolerance; }
  nlohmann::json to_json() const;
};

inline constexpr double kDefaultTolerance = 1e-10;

int required_margin(const std::vector<RelationTerm>& terms);

RelationResidual relation_residual(const std::string& label, const std::vector<RelationTerm>& terms, int margin,
                                   double tol = kDefaultTolerance);

// Residual over interior columns of a - b.
RelationResidual difference_residual(const std::string& label, const WindowedOperator& a,
                                     const WindowedOperator& b, int margin, double tol = kDefaultTolerance);

double op_norm_bound(const WindowedOperator& a);

bool all_pass(const std::vector<RelationResidual>& rs);

}  // namespace pcqg
