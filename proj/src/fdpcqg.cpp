#include "pcqg/fdpcqg.hpp"

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace pcqg {

namespace {

constexpr double kZeroUnit = 1e-12;
constexpr double kAxiomTol = 1e-10;

double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

long rank_of(const Mat& m) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::BDCSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0) return 0;
  long r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > kRankCutoff * s(0)) ++r;
  return r;
}

Mat hcat(const Mat& a, const Mat& b) {
  Mat out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

// Delta(e_i) as a d x d coefficient matrix.
std::vector<Mat> cop_matrices(const FinitePQG& G) {
  const int d = G.dim();
  std::vector<Mat> out(d, Mat::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (const auto& [p, v] : G.cop[i]) out[i](p / d, p % d) += v;
  return out;
}

}  // namespace

bool FinitePQG::unit_nonzero(int k, int l) const { return unit(k, l).norm() > kZeroUnit; }

Vec FinitePQG::e(int i) const {
  Vec v = Vec::Zero(dim());
  v(i) = 1;
  return v;
}

Vec FinitePQG::one() const {
  Vec v = Vec::Zero(dim());
  for (const auto& u : units) v += u;
  return v;
}

Vec FinitePQG::mul(const Vec& a, const Vec& b) const {
  const int d = dim();
  Vec out = Vec::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (a(i) == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b(j) == 0) continue;
      for (const auto& [k, v] : prod[i * d + j]) out(k) += a(i) * b(j) * v;
    }
  }
  return out;
}

Mat FinitePQG::left_matrix(const Vec& a) const {
  Mat m(dim(), dim());
  for (int j = 0; j < dim(); ++j) m.col(j) = mul(a, e(j));
  return m;
}

Vec FinitePQG::delta(const Vec& a) const {
  const int d = dim();
  Vec out = Vec::Zero(d * d);
  for (int i = 0; i < d; ++i) {
    if (a(i) == 0) continue;
    for (const auto& [p, v] : cop[i]) out(p) += a(i) * v;
  }
  return out;
}

Vec FinitePQG::mul2(const Vec& x, const Vec& y) const {
  const int d = dim();
  Vec out = Vec::Zero(d * d);
  std::vector<int> nx, ny;
  for (int p = 0; p < d * d; ++p) {
    if (x(p) != 0) nx.push_back(p);
    if (y(p) != 0) ny.push_back(p);
  }
  for (int p : nx)
    for (int r : ny) {
      const auto& left = prod[(p / d) * d + r / d];
      const auto& right = prod[(p % d) * d + r % d];
      for (const auto& [k1, v1] : left)
        for (const auto& [k2, v2] : right) out(k1 * d + k2) += x(p) * y(r) * v1 * v2;
    }
  return out;
}

Mat FinitePQG::compression(int k, int l) const {
  const Vec& u = unit(k, l);
  Mat c(dim(), dim());
  for (int i = 0; i < dim(); ++i) c.col(i) = mul(u, mul(e(i), u));
  return c;
}

Vec FinitePQG::lambda(int k) const {
  Vec v = Vec::Zero(dim());
  for (int m = 0; m < n_obj(); ++m) v += unit(k, m);
  return v;
}

Vec FinitePQG::rho(int m) const {
  Vec v = Vec::Zero(dim());
  for (int k = 0; k < n_obj(); ++k) v += unit(k, m);
  return v;
}

nlohmann::json FinitePQG::to_json() const {
  const int d = dim();
  nlohmann::json mult = nlohmann::json::array(), coprod = nlohmann::json::array(), st = nlohmann::json::array(),
                 us = nlohmann::json::array();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (const auto& [k, v] : prod[i * d + j]) mult.push_back({i, j, k, v});
  for (int i = 0; i < d; ++i) {
    for (const auto& [p, v] : cop[i]) coprod.push_back({i, p / d, p % d, v});
    nlohmann::json r = nlohmann::json::array();
    for (int j = 0; j < d; ++j) r.push_back(star(i, j));
    st.push_back(r);
  }
  for (int k = 0; k < n_obj(); ++k)
    for (int l = 0; l < n_obj(); ++l) {
      const Vec& u = unit(k, l);
      us.push_back({{"k", objects[k]}, {"l", objects[l]}, {"vector", std::vector<double>(u.data(), u.data() + d)}});
    }
  return {{"name", name}, {"objects", objects}, {"basis", basis},   {"mult", mult},
          {"star", st},   {"units", us},        {"coproduct", coprod}};
}

FinitePQG FinitePQG::from_json(const nlohmann::json& j) {
  FinitePQG G;
  G.name = j.value("name", "instance");
  G.objects = j.at("objects").get<std::vector<std::string>>();
  G.basis = j.at("basis").get<std::vector<std::string>>();
  const int d = G.dim(), n = G.n_obj();
  if (d == 0 || n == 0) throw std::invalid_argument("instance needs a basis and objects");
  auto idx = [d](long v) {
    if (v < 0 || v >= d) throw std::invalid_argument("basis index out of range");
    return static_cast<int>(v);
  };
  G.prod.assign(d * d, {});
  for (const auto& t : j.at("mult")) {
    if (t.size() != 4) throw std::invalid_argument("mult entries are [i, j, k, value]");
    G.prod[idx(t[0]) * d + idx(t[1])].push_back({idx(t[2]), t[3].get<double>()});
  }
  const auto& st = j.at("star");
  if (st.size() != static_cast<std::size_t>(d)) throw std::invalid_argument("star must be d x d");
  G.star.resize(d, d);
  for (int r = 0; r < d; ++r) {
    if (st[r].size() != static_cast<std::size_t>(d)) throw std::invalid_argument("star must be d x d");
    for (int c = 0; c < d; ++c) G.star(r, c) = st[r][c].get<double>();
  }
  G.units.assign(n * n, Vec::Zero(d));
  auto obj = [&](const std::string& s) {
    auto it = std::find(G.objects.begin(), G.objects.end(), s);
    if (it == G.objects.end()) throw std::invalid_argument("unknown object '" + s + "'");
    return static_cast<int>(it - G.objects.begin());
  };
  for (const auto& u : j.at("units")) {
    auto v = u.at("vector").get<std::vector<double>>();
    if (v.size() != static_cast<std::size_t>(d)) throw std::invalid_argument("unit vector has wrong length");
    G.units[obj(u.at("k")) * n + obj(u.at("l"))] = Eigen::Map<Vec>(v.data(), d);
  }
  G.cop.assign(d, {});
  for (const auto& t : j.at("coproduct")) {
    if (t.size() != 4) throw std::invalid_argument("coproduct entries are [i, j, k, value]");
    G.cop[idx(t[0])].push_back({idx(t[1]) * d + idx(t[2]), t[3].get<double>()});
  }
  return G;
}

FinitePQG from_category_functions(const CategoryData& c) {
  c.validate();
  FinitePQG G;
  G.name = "C(" + c.name + ")";
  G.objects = c.objects;
  const int d = static_cast<int>(c.arrows.size()), n = static_cast<int>(c.objects.size());
  for (const auto& a : c.arrows) G.basis.push_back(a.id);
  G.prod.assign(d * d, {});
  for (int g = 0; g < d; ++g) G.prod[g * d + g].push_back({g, 1.0});
  G.star = Mat::Identity(d, d);
  G.units.assign(n * n, Vec::Zero(d));
  for (int g = 0; g < d; ++g) G.units[c.arrows[g].src * n + c.arrows[g].tgt](g) = 1;
  G.cop.assign(d, {});
  for (int h1 = 0; h1 < d; ++h1)
    for (int h2 = 0; h2 < d; ++h2)
      if (int g = c.compose[h1][h2]; g >= 0) G.cop[g].push_back({h1 * d + h2, 1.0});
  return G;
}

FinitePQG from_finite_groupoid_functions(const GroupoidData& g) {
  g.validate();
  return from_category_functions(g);
}

FinitePQG from_finite_groupoid_algebra(const GroupoidData& g) {
  g.validate();
  FinitePQG G;
  G.name = "C*(" + g.name + ")";
  G.objects = g.objects;
  const int d = static_cast<int>(g.arrows.size()), n = static_cast<int>(g.objects.size());
  for (const auto& a : g.arrows) G.basis.push_back(a.id);
  G.prod.assign(d * d, {});
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      if (int ab = g.compose[a][b]; ab >= 0) G.prod[a * d + b].push_back({ab, 1.0});
  G.star = Mat::Zero(d, d);
  for (int a = 0; a < d; ++a) G.star(g.inverse[a], a) = 1;
  G.units.assign(n * n, Vec::Zero(d));
  for (int k = 0; k < n; ++k) G.units[k * n + k](g.identity[k]) = 1;
  G.cop.assign(d, {});
  for (int a = 0; a < d; ++a) G.cop[a].push_back({a * d + a, 1.0});
  return G;
}

nlohmann::json AxiomResult::to_json() const {
  nlohmann::json j = {{"axiom", name}, {"pass", pass}, {"residual", residual}};
  if (!detail.empty()) j["detail"] = detail;
  if (!witness.empty()) j["witness"] = witness;
  return j;
}

const AxiomResult& AxiomReport::get(const std::string& name) const {
  for (const auto& a : axioms)
    if (a.name == name) return a;
  throw std::out_of_range("no axiom " + name);
}

bool AxiomReport::all_pass() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.pass; });
}

std::vector<std::string> AxiomReport::failing() const {
  std::vector<std::string> out;
  for (const auto& a : axioms)
    if (!a.pass) out.push_back(a.name);
  return out;
}

nlohmann::json AxiomReport::to_json() const {
  nlohmann::json ax = nlohmann::json::array();
  for (const auto& a : axioms) ax.push_back(a.to_json());
  return {{"axioms", ax},
          {"all_pass", all_pass()},
          {"failing", failing()},
          {"unit_relation",
           {{"reflexive", reflexive}, {"symmetric", symmetric}, {"transitive", transitive},
            {"equivalence", equivalence()}}}};
}

AxiomReport verify_axioms(const FinitePQG& G) {
  const int d = G.dim(), n = G.n_obj();
  AxiomReport rep;
  auto residual_result = [&](const std::string& name, double r) {
    AxiomResult a;
    a.name = name;
    a.residual = r;
    a.pass = r < kAxiomTol;
    rep.axioms.push_back(a);
  };

  std::vector<Vec> E;
  for (int i = 0; i < d; ++i) E.push_back(G.e(i));
  std::vector<Vec> P(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) P[i * d + j] = G.mul(E[i], E[j]);

  double r = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) r = std::max(r, max_abs(G.mul(P[i * d + j], E[k]) - G.mul(E[i], P[j * d + k])));
  residual_result("associativity", r);

  r = max_abs((G.star * G.star - Mat::Identity(d, d)).reshaped());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      r = std::max(r, max_abs(G.adj(P[i * d + j]) - G.mul(G.adj(E[j]), G.adj(E[i]))));
  residual_result("star", r);

  std::vector<Vec> D(d);
  for (int i = 0; i < d; ++i) D[i] = G.delta(E[i]);
  Mat star2 = Eigen::kroneckerProduct(G.star, G.star);
  r = 0;
  for (int i = 0; i < d; ++i) {
    r = std::max(r, max_abs(G.delta(G.adj(E[i])) - star2 * D[i]));
    for (int j = 0; j < d; ++j) r = std::max(r, max_abs(G.delta(P[i * d + j]) - G.mul2(D[i], D[j])));
  }
  residual_result("Delta homomorphism", r);

  // (U1)
  r = 0;
  Vec one = G.one();
  for (int a = 0; a < n * n; ++a) {
    const Vec& u = G.units[a];
    r = std::max(r, max_abs(G.adj(u) - u));
    r = std::max(r, max_abs(G.mul(u, u) - u));
    for (int b = 0; b < n * n; ++b)
      if (b != a) r = std::max(r, max_abs(G.mul(u, G.units[b])));
  }
  for (int i = 0; i < d; ++i) {
    r = std::max(r, max_abs(G.mul(one, E[i]) - E[i]));
    r = std::max(r, max_abs(G.mul(E[i], one) - E[i]));
  }
  residual_result("U1", r);

  // (U2)
  r = 0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      Vec rhs = Vec::Zero(d * d);
      for (int m = 0; m < n; ++m) rhs += kron(G.unit(k, m), G.unit(m, l));
      r = std::max(r, max_abs(G.delta(G.unit(k, l)) - rhs));
    }
  residual_result("U2", r);

  {
    AxiomResult a;
    a.name = "U3";
    a.pass = true;
    for (int k = 0; k < n; ++k)
      if (!G.unit_nonzero(k, k)) {
        a.pass = false;
        a.residual = 1;
        a.detail += "1^" + G.objects[k] + "_" + G.objects[k] + " = 0; ";
      }
    rep.axioms.push_back(a);
  }

  // (C)
  r = 0;
  for (int i = 0; i < d; ++i) {
    Vec left = Vec::Zero(d * d * d), right = Vec::Zero(d * d * d);
    for (const auto& [p, v] : G.cop[i]) {
      int j = p / d, k = p % d;
      for (const auto& [s, w] : G.cop[j]) left(s * d + k) += v * w;
      for (const auto& [s, w] : G.cop[k]) right(j * d * d + s) += v * w;
    }
    r = std::max(r, max_abs(left - right));
  }
  residual_result("C", r);

  // (D1): (A (x) A) Delta(1), (A (x) 1) Delta(A), (1 (x) A) Delta(A) span the same space
  {
    Vec D1 = G.delta(one);
    Mat S0(d * d, d * d), S1(d * d, d * d), S2(d * d, d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        S0.col(i * d + j) = G.mul2(kron(E[i], E[j]), D1);
        S1.col(i * d + j) = G.mul2(kron(E[i], one), D[j]);
        S2.col(i * d + j) = G.mul2(kron(one, E[i]), D[j]);
      }
    long r0 = rank_of(S0), r1 = rank_of(S1), r2 = rank_of(S2);
    long r01 = rank_of(hcat(S0, S1)), r02 = rank_of(hcat(S0, S2));
    AxiomResult a;
    a.name = "D1";
    a.pass = r0 == r1 && r0 == r2 && r01 == r0 && r02 == r0;
    a.residual = a.pass ? 0 : 1;
    a.detail = "ranks " + std::to_string(r0) + " " + std::to_string(r1) + " " + std::to_string(r2) + " joint " +
               std::to_string(r01) + " " + std::to_string(r02);
    rep.axioms.push_back(a);
  }

  // (D2): slices (omega (x) id) Delta(P A P) span A
  {
    Vec Pp = Vec::Zero(d);
    for (int k = 0; k < n; ++k) Pp += G.unit(k, k);
    auto Cm = cop_matrices(G);
    Mat S(d, d * d);
    for (int i = 0; i < d; ++i) {
      Vec x = G.mul(Pp, G.mul(E[i], Pp));
      Mat C = Mat::Zero(d, d);
      for (int t = 0; t < d; ++t) C += x(t) * Cm[t];
      S.middleCols(i * d, d) = C.transpose();
    }
    Eigen::BDCSVD<Mat> svd(S, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    long rk = 0;
    for (Eigen::Index t = 0; t < s.size(); ++t)
      if (s(0) > 0 && s(t) > kRankCutoff * s(0)) ++rk;
    AxiomResult a;
    a.name = "D2";
    a.pass = rk == d;
    a.residual = a.pass ? 0 : 1;
    a.detail = "slice span rank " + std::to_string(rk) + " of " + std::to_string(d);
    if (!a.pass) {
      Vec w = svd.matrixU().col(d - 1);
      a.witness.assign(w.data(), w.data() + d);
    }
    rep.axioms.push_back(a);
  }

  rep.reflexive = rep.symmetric = rep.transitive = true;
  for (int k = 0; k < n; ++k) {
    if (!G.unit_nonzero(k, k)) rep.reflexive = false;
    for (int l = 0; l < n; ++l) {
      if (G.unit_nonzero(k, l) != G.unit_nonzero(l, k)) rep.symmetric = false;
      for (int m = 0; m < n; ++m)
        if (G.unit_nonzero(k, l) && G.unit_nonzero(l, m) && !G.unit_nonzero(k, m)) rep.transitive = false;
    }
  }
  return rep;
}

double support_defect(const FinitePQG& G, const GradedFunctional& f) {
  if (f.zero) return max_abs(f.w);
  double r = 0;
  for (int i = 0; i < G.dim(); ++i) {
    Vec a = G.e(i);
    r = std::max(r, std::abs(f(a) - f(G.mul(G.unit(f.k, f.m), G.mul(a, G.unit(f.l, f.n))))));
  }
  return r;
}

GradedFunctional convolve(const FinitePQG& G, const GradedFunctional& chi, const GradedFunctional& omega) {
  const int d = G.dim();
  GradedFunctional out;
  out.k = chi.k;
  out.m = omega.m;
  out.l = chi.l;
  out.n = omega.n;
  out.w = Vec::Zero(d);
  if (chi.zero || omega.zero || chi.m != omega.k || chi.n != omega.l) {
    out.zero = true;
    return out;
  }
  for (int i = 0; i < d; ++i)
    for (const auto& [p, v] : G.cop[i]) out.w(i) += v * chi.w(p / d) * omega.w(p % d);
  return out;
}

namespace {

// tau(e_i) = Tr(L_{e_i}), the left regular trace
Vec regular_trace(const FinitePQG& G) {
  const int d = G.dim();
  Vec t = Vec::Zero(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (const auto& [k, v] : G.prod[i * d + j])
        if (k == j) t(i) += v;
  return t;
}

GradedFunctional corner_state(const FinitePQG& G, int k, int m, const Vec& b) {
  Vec t = regular_trace(G);
  Mat C = G.compression(k, m);
  GradedFunctional f;
  f.k = f.l = k;
  f.m = f.n = m;
  f.w = Vec::Zero(G.dim());
  double norm = t.dot(b);
  if (norm <= 0) throw std::runtime_error("corner state: nonpositive normalization");
  for (int i = 0; i < G.dim(); ++i) f.w(i) = t.dot(G.mul(b, C.col(i))) / norm;
  return f;
}

}  // namespace

GradedFunctional trace_state(const FinitePQG& G, int k, int m) { return corner_state(G, k, m, G.unit(k, m)); }

GradedFunctional random_state(const FinitePQG& G, int k, int m, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Vec r(G.dim());
  for (int i = 0; i < G.dim(); ++i) r(i) = U(rng);
  r = G.compression(k, m) * r;
  Vec b = G.unit(k, m) + G.mul(G.adj(r), r);
  return corner_state(G, k, m, b);
}

double invariance_residual(const FinitePQG& G, const std::vector<std::optional<Vec>>& phi) {
  const int d = G.dim(), n = G.n_obj();
  auto val = [&](int k, int m, int i) { return phi[k * n + m] ? (*phi[k * n + m])(i) : 0.0; };
  double r = 0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < d; ++i) {
        Vec lhs1 = Vec::Zero(d), lhs2 = Vec::Zero(d), rhs1 = Vec::Zero(d), rhs2 = Vec::Zero(d);
        for (const auto& [p, v] : G.cop[i]) {
          lhs1(p / d) += v * val(k, l, p % d);
          lhs2(p % d) += v * val(k, l, p / d);
        }
        for (int m = 0; m < n; ++m) {
          rhs1 += val(m, l, i) * G.unit(m, k);
          rhs2 += val(k, m, i) * G.unit(l, m);
        }
        r = std::max({r, max_abs(lhs1 - rhs1), max_abs(lhs2 - rhs2)});
      }
  return r;
}

namespace {

double i1_residual(const FinitePQG& G, const std::vector<std::optional<Vec>>& phi) {
  const int n = G.n_obj();
  double r = 0;
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m)
      if (G.unit_nonzero(k, m)) {
        if (!phi[k * n + m]) return std::numeric_limits<double>::infinity();
        r = std::max(r, std::abs(phi[k * n + m]->dot(G.unit(k, m)) - 1.0));
      }
  return r;
}

// Left and right invariance of a state on the corner (k, k) against a spanning set.
double corner_residual(const FinitePQG& G, const std::vector<Mat>& Cm, const Mat& Ckk, const Vec& u, const Vec& h) {
  const int d = G.dim();
  double r = 0;
  for (int i = 0; i < d; ++i) {
    Vec left = Ckk * (Cm[i] * h) - u * h(i);
    Vec right = Ckk * (Cm[i].transpose() * h) - u * h(i);
    r = std::max({r, max_abs(left), max_abs(right)});
  }
  return r;
}

}  // namespace

HaarFamily haar_cesaro(const FinitePQG& G, const CesaroOptions& opt) {
  const int n = G.n_obj();
  HaarFamily H;
  H.method = "cesaro";
  H.status = "ok";
  H.phi.assign(n * n, std::nullopt);
  auto Cm = cop_matrices(G);
  for (int k = 0; k < n; ++k) {
    if (!G.unit_nonzero(k, k)) continue;
    Mat Ckk = G.compression(k, k);
    const Vec& u = G.unit(k, k);
    GradedFunctional w = opt.random_seed_states ? random_state(G, k, k, opt.seed + k) : trace_state(G, k, k);
    GradedFunctional Pn = w, Sn = w;
    double N = 1;
    int steps = 0;
    for (;;) {
      double res = corner_residual(G, Cm, Ckk, u, Sn.w / N);
      H.trace.push_back(res);
      if (res < opt.tol) break;
      if (steps >= opt.max_doublings) {
        H.status = "not converged";
        break;
      }
      GradedFunctional SP = convolve(G, Sn, Pn);
      Sn.w += SP.w;
      Pn = convolve(G, Pn, Pn);
      // repeated squaring amplifies any drift of the total mass
      Pn.w /= Pn(u);
      N *= 2;
      ++steps;
    }
    H.iterations = std::max(H.iterations, steps);
    H.phi[k * n + k] = Sn.w / N;
  }
  for (int r = 0; r < n; ++r)
    for (int m = 0; m < n; ++m) {
      if (r == m || !G.unit_nonzero(r, m)) continue;
      if (!H.phi[m * n + m]) {
        H.status = "missing diagonal corner";
        continue;
      }
      GradedFunctional theta = opt.random_seed_states ? random_state(G, r, m, opt.seed + 101 * r + m)
                                                      : trace_state(G, r, m);
      GradedFunctional pm;
      pm.w = *H.phi[m * n + m];
      pm.k = pm.m = pm.l = pm.n = m;
      H.phi[r * n + m] = convolve(G, theta, pm).w;
    }
  H.i1_residual = i1_residual(G, H.phi);
  H.invariance_residual = invariance_residual(G, H.phi);
  if (H.status == "ok" && !(H.invariance_residual < opt.tol && H.i1_residual < opt.tol)) H.status = "not invariant";
  return H;
}

namespace {

struct LinearSolve {
  std::vector<std::optional<Vec>> phi;
  long rank = 0, unknowns = 0;
  double residual = 0;
};

LinearSolve solve_invariant(const FinitePQG& G, bool left) {
  const int d = G.dim(), n = G.n_obj();
  auto Cm = cop_matrices(G);
  std::vector<int> offset(n * n, -1);
  int nu = 0;
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m)
      if (G.unit_nonzero(k, m)) {
        offset[k * n + m] = nu;
        nu += d;
      }
  std::vector<Mat> C(n * n);
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m)
      if (offset[k * n + m] >= 0) C[k * n + m] = G.compression(k, m);

  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  auto new_row = [&] {
    rows.emplace_back(Eigen::RowVectorXd::Zero(nu));
    rhs.push_back(0);
    return rows.size() - 1;
  };
  for (int km = 0; km < n * n; ++km) {
    int o = offset[km];
    if (o < 0) continue;
    for (int i = 0; i < d; ++i) {
      auto r = new_row();
      rows[r].segment(o, d) = (G.e(i) - C[km].col(i)).transpose();
    }
    auto r = new_row();
    rows[r].segment(o, d) = G.units[km].transpose();
    rhs[r] = 1;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = a * n + b;
      if (offset[ab] < 0) continue;
      const Vec& u = G.units[ab];
      if (left) {
        // omega * phi_{bm} = omega(1^a_b) phi_{am}, omega in B^{ab}_{ab}
        for (int m = 0; m < n; ++m) {
          int bm = b * n + m, am = a * n + m;
          if (offset[bm] < 0) continue;
          for (int i = 0; i < d; ++i) {
            Mat M = C[ab] * Cm[i];
            for (int j = 0; j < d; ++j) {
              auto r = new_row();
              rows[r].segment(offset[bm], d) = M.row(j);
              if (offset[am] >= 0) rows[r](offset[am] + i) -= u(j);
            }
          }
        }
      } else {
        // phi_{ka} * omega = omega(1^a_b) phi_{kb}, omega in B^{ab}_{ab}
        for (int k = 0; k < n; ++k) {
          int ka = k * n + a, kb = k * n + b;
          if (offset[ka] < 0) continue;
          for (int i = 0; i < d; ++i) {
            Mat M = Cm[i] * C[ab].transpose();
            for (int j = 0; j < d; ++j) {
              auto r = new_row();
              rows[r].segment(offset[ka], d) = M.col(j).transpose();
              if (offset[kb] >= 0) rows[r](offset[kb] + i) -= u(j);
            }
          }
        }
      }
    }
  // the invariance equations themselves: (id (x) phi_kl) Delta(a) = sum_m phi_ml(a) 1^m_k on the
  // left, (phi_kl (x) id) Delta(a) = sum_m phi_km(a) 1^l_m on the right
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a) {
          auto r = new_row();
          if (offset[k * n + l] >= 0)
            rows[r].segment(offset[k * n + l], d) = left ? Cm[i].row(a) : Eigen::RowVectorXd(Cm[i].col(a).transpose());
          for (int m = 0; m < n; ++m) {
            int src = left ? m * n + l : k * n + m;
            if (offset[src] >= 0) rows[r](offset[src] + i) -= left ? G.unit(m, k)(a) : G.unit(l, m)(a);
          }
        }
  Mat A(rows.size(), nu);
  Vec bvec(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    A.row(r) = rows[r];
    bvec(r) = rhs[r];
  }
  Eigen::BDCSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kRankCutoff);
  Vec x = svd.solve(bvec);
  LinearSolve out;
  out.rank = svd.rank();
  out.unknowns = nu;
  out.residual = (A * x - bvec).norm();
  out.phi.assign(n * n, std::nullopt);
  for (int km = 0; km < n * n; ++km)
    if (offset[km] >= 0) out.phi[km] = x.segment(offset[km], d);
  return out;
}

double phi_distance(const std::vector<std::optional<Vec>>& a, const std::vector<std::optional<Vec>>& b) {
  double r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i] && !b[i]) continue;
    if (!a[i] || !b[i]) return std::numeric_limits<double>::infinity();
    r = std::max(r, max_abs(*a[i] - *b[i]));
  }
  return r;
}

}  // namespace

HaarFamily haar_linear_solve(const FinitePQG& G) {
  auto L = solve_invariant(G, true);
  auto R = solve_invariant(G, false);
  HaarFamily H;
  H.method = "linear";
  H.phi = L.phi;
  H.rank = L.rank;
  H.unknowns = L.unknowns;
  H.system_residual = std::max(L.residual, R.residual);
  H.left_right_gap = phi_distance(L.phi, R.phi);
  if (H.system_residual > 1e-8)
    H.status = "no solution";
  else if (L.rank < L.unknowns || R.rank < R.unknowns)
    H.status = "non-unique";
  else
    H.status = "unique";
  H.i1_residual = i1_residual(G, H.phi);
  H.invariance_residual = invariance_residual(G, H.phi);
  return H;
}

double family_distance(const HaarFamily& a, const HaarFamily& b) { return phi_distance(a.phi, b.phi); }

nlohmann::json HaarFamily::to_json(const FinitePQG& G) const {
  const int n = G.n_obj();
  nlohmann::json fam = nlohmann::json::array();
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m)
      if (phi[k * n + m]) {
        const Vec& v = *phi[k * n + m];
        fam.push_back({{"k", G.objects[k]}, {"m", G.objects[m]}, {"values", std::vector<double>(v.data(), v.data() + v.size())}});
      }
  nlohmann::json j = {{"method", method},
                      {"status", status},
                      {"basis", G.basis},
                      {"phi", fam},
                      {"i1_residual", i1_residual},
                      {"invariance_residual", invariance_residual}};
  if (method == "linear") {
    j["rank"] = rank;
    j["unknowns"] = unknowns;
    j["system_residual"] = system_residual;
    j["left_right_gap"] = left_right_gap;
  } else {
    j["doublings"] = iterations;
    j["residual_trace"] = trace;
  }
  return j;
}

BigradedRep trivial_rep(const FinitePQG& G) {
  const int n = G.n_obj();
  BigradedRep X;
  X.label = "E";
  for (int k = 0; k < n; ++k) {
    X.row.push_back(k);
    X.col.push_back(k);
  }
  X.X.assign(n * n, Vec());
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m) X.at(k, m) = G.unit(k, m);
  return X;
}

BigradedRep tensor_reps(const FinitePQG& G, const BigradedRep& X, const BigradedRep& Y) {
  BigradedRep Z;
  Z.label = X.label + "(.)" + Y.label;
  std::vector<std::pair<int, int>> basis;
  for (int i = 0; i < X.dim(); ++i)
    for (int a = 0; a < Y.dim(); ++a)
      if (X.col[i] == Y.row[a]) {
        basis.push_back({i, a});
        Z.row.push_back(X.row[i]);
        Z.col.push_back(Y.col[a]);
      }
  const int D = static_cast<int>(basis.size());
  Z.X.assign(D * D, Vec::Zero(G.dim()));
  for (int s = 0; s < D; ++s)
    for (int t = 0; t < D; ++t)
      Z.at(s, t) = G.mul(X.at(basis[s].first, basis[t].first), Y.at(basis[s].second, basis[t].second));
  return Z;
}

BigradedRep groupoid_rep_functions(const GroupoidData& g, const GroupoidRep& r) {
  BigradedRep X;
  X.label = "pi";
  std::vector<std::pair<int, int>> basis;  // (object, component)
  for (std::size_t o = 0; o < g.objects.size(); ++o)
    for (int a = 0; a < r.dim[o]; ++a) {
      basis.push_back({static_cast<int>(o), a});
      X.row.push_back(static_cast<int>(o));
      X.col.push_back(static_cast<int>(o));
    }
  const int D = static_cast<int>(basis.size()), d = static_cast<int>(g.arrows.size());
  X.X.assign(D * D, Vec::Zero(d));
  for (int s = 0; s < D; ++s)
    for (int t = 0; t < D; ++t)
      for (int a = 0; a < d; ++a)
        if (g.arrows[a].src == basis[s].first && g.arrows[a].tgt == basis[t].first)
          X.at(s, t)(a) += r.pi[a](basis[s].second, basis[t].second);
  return X;
}

RepReport verify_rep(const FinitePQG& G, const BigradedRep& X) {
  RepReport R;
  const int D = X.dim();
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      const Vec& x = X.at(i, j);
      Vec rhs = Vec::Zero(G.dim() * G.dim());
      for (int t = 0; t < D; ++t) rhs += kron(X.at(i, t), X.at(t, j));
      R.co1 = std::max(R.co1, max_abs(G.delta(x) - rhs));
      Vec comp = G.mul(G.unit(X.row[i], X.row[j]), G.mul(x, G.unit(X.col[i], X.col[j])));
      R.co2 = std::max(R.co2, max_abs(x - comp));
      Vec xs = Vec::Zero(G.dim()), sx = Vec::Zero(G.dim());
      for (int t = 0; t < D; ++t) {
        xs += G.mul(G.adj(X.at(t, i)), X.at(t, j));
        sx += G.mul(X.at(i, t), G.adj(X.at(j, t)));
      }
      if (i == j) {
        xs -= G.rho(X.col[i]);
        sx -= G.lambda(X.row[i]);
      }
      R.unitary_right = std::max(R.unitary_right, max_abs(xs));
      R.unitary_left = std::max(R.unitary_left, max_abs(sx));
    }
  return R;
}

nlohmann::json RepReport::to_json() const {
  return {{"Co1", co1}, {"Co2", co2}, {"XstarX", unitary_right}, {"XXstar", unitary_left}, {"tolerance", tol},
          {"pass", pass()}};
}

double rep_distance(const BigradedRep& a, const BigradedRep& b) {
  if (a.row != b.row || a.col != b.col) return std::numeric_limits<double>::infinity();
  double r = 0;
  for (std::size_t i = 0; i < a.X.size(); ++i) r = std::max(r, max_abs(a.X[i] - b.X[i]));
  return r;
}

std::vector<NamedInstance> instance_library() {
  std::vector<GroupoidData> gs = {pair_groupoid(2), cyclic_group(2), cyclic_group(3),
                                  product_groupoid(symmetric_group3(), pair_groupoid(2)),
                                  disjoint_union(pair_groupoid(2), cyclic_group(2)), trivial_group()};
  std::vector<NamedInstance> out;
  for (const auto& g : gs) out.push_back({"fun:" + g.name, from_finite_groupoid_functions(g), true, g});
  for (const auto& g : gs) out.push_back({"alg:" + g.name, from_finite_groupoid_algebra(g), false, g});
  out.push_back({"raum", from_category_functions(raum_category()), false, std::nullopt});
  return out;
}

std::vector<std::optional<Vec>> uniform_haar_oracle(const GroupoidData& g) {
  const int n = static_cast<int>(g.objects.size()), d = static_cast<int>(g.arrows.size());
  std::vector<std::optional<Vec>> phi(n * n);
  for (int a = 0; a < d; ++a) {
    int km = g.arrows[a].src * n + g.arrows[a].tgt;
    if (!phi[km]) phi[km] = Vec::Zero(d);
    (*phi[km])(a) = 1;
  }
  for (auto& p : phi)
    if (p) *p /= p->sum();
  return phi;
}

}  // namespace pcqg
