#include "pcqg/coef.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pcqg/lattice.hpp"

namespace pcqg {

CoefFn CoefFn::constant(double c) {
  CoefFn f;
  f.scale = c;
  return f;
}

CoefFn CoefFn::tau_pow(int a, int s, int t, int p) {
  CoefFn f;
  f.taus.push_back({a, s, t, p});
  f.normalize();
  return f;
}

CoefFn CoefFn::monomial(int lam2, int rho2, double c) {
  CoefFn f;
  f.scale = c;
  f.lam2 = lam2;
  f.rho2 = rho2;
  return f;
}

CoefFn CoefFn::projection(long ya, long zb) {
  CoefFn f;
  f.unit = std::make_pair(ya, zb);
  return f;
}

CoefFn CoefFn::w_lam(int eps, int p) { return tau_pow(eps, 1, 0, p) * tau_pow(0, 1, 0, -p); }
CoefFn CoefFn::w_rho(int eps, int p) { return tau_pow(eps, 0, 1, p) * tau_pow(0, 0, 1, -p); }

void CoefFn::normalize() {
  std::vector<TauFactor> out;
  for (auto f : taus) {
    if (f.p == 0) continue;
    if (f.s < 0 || (f.s == 0 && f.t < 0) || (f.s == 0 && f.t == 0 && f.a < 0)) {
      f.a = -f.a;
      f.s = -f.s;
      f.t = -f.t;
    }
    if (f.s == 0 && f.t == 0 && f.a == 0) {
      scale *= std::pow(2.0, f.p / 2.0);
      continue;
    }
    out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const TauFactor& x, const TauFactor& y) {
    return std::tie(x.s, x.t, x.a) < std::tie(y.s, y.t, y.a);
  });
  taus.clear();
  for (const auto& f : out) {
    if (!taus.empty() && taus.back().a == f.a && taus.back().s == f.s && taus.back().t == f.t)
      taus.back().p += f.p;
    else
      taus.push_back(f);
  }
  std::erase_if(taus, [](const TauFactor& f) { return f.p == 0; });
}

CoefFn CoefFn::operator*(const CoefFn& o) const {
  CoefFn r = *this;
  r.scale *= o.scale;
  r.qpow2 += o.qpow2;
  r.lam2 += o.lam2;
  r.rho2 += o.rho2;
  r.taus.insert(r.taus.end(), o.taus.begin(), o.taus.end());
  if (o.unit) {
    if (r.unit && *r.unit != *o.unit) r.scale = 0.0;
    r.unit = o.unit;
  }
  r.normalize();
  return r;
}

CoefFn CoefFn::shifted(int dl, int dr) const {
  CoefFn r = *this;
  r.qpow2 += dl * lam2 + dr * rho2;
  for (auto& f : r.taus) f.a += f.s * dl + f.t * dr;
  if (r.unit) r.unit = std::make_pair(r.unit->first - dl, r.unit->second - dr);
  r.normalize();
  return r;
}

CoefFn CoefFn::swapped() const {
  CoefFn r = *this;
  std::swap(r.lam2, r.rho2);
  for (auto& f : r.taus) std::swap(f.s, f.t);
  if (r.unit) r.unit = std::make_pair(r.unit->second, r.unit->first);
  r.normalize();
  return r;
}

double CoefFn::numeric_scale(double q) const { return scale * std::pow(q, qpow2 / 2.0); }

bool CoefFn::same_shape(const CoefFn& o) const {
  return lam2 == o.lam2 && rho2 == o.rho2 && taus == o.taus && unit == o.unit;
}

double CoefFn::eval(double lam, double rho, double q, const std::optional<std::pair<long, long>>& exps) const {
  if (scale == 0.0) return 0.0;
  if (unit) {
    if (!exps) throw std::invalid_argument("CoefFn::eval: projection needs lattice exponents");
    if (*exps != *unit) return 0.0;
  }
  double v = numeric_scale(q) * std::pow(lam, lam2 / 2.0) * std::pow(rho, rho2 / 2.0);
  for (const auto& f : taus) {
    double arg = std::pow(q, f.a) * std::pow(lam, f.s) * std::pow(rho, f.t);
    v *= std::pow(tau(arg), f.p / 2.0);
  }
  return v;
}

std::string CoefFn::str() const {
  std::ostringstream os;
  os.precision(17);
  os << scale;
  if (qpow2) os << "*q^(" << qpow2 << "/2)";
  if (lam2) os << "*lam^(" << lam2 << "/2)";
  if (rho2) os << "*rho^(" << rho2 << "/2)";
  for (const auto& f : taus) {
    os << "*tau(";
    bool first = true;
    auto part = [&](const char* sym, int e) {
      if (!e) return;
      if (!first) os << " ";
      os << sym;
      if (e != 1) os << "^" << e;
      first = false;
    };
    part("q", f.a);
    part("lam", f.s);
    part("rho", f.t);
    os << ")^(" << f.p << "/2)";
  }
  if (unit) os << "*P(" << unit->first << "," << unit->second << ")";
  return os.str();
}

char Letter::name() const {
  if (eps < 0) return nu < 0 ? 'a' : 'b';
  return nu < 0 ? 'g' : 'd';
}

std::string to_string(const Term& t) {
  std::string s;
  for (const auto& f : t.factors) {
    if (!s.empty()) s += " ";
    if (auto* l = std::get_if<Letter>(&f)) {
      s += l->name();
      if (l->star) s += "'";
    } else {
      s += "[" + std::get<CoefFn>(f).str() + "]";
    }
  }
  return s.empty() ? "1" : s;
}

std::string to_string(const Expr& e) {
  std::string s;
  for (const auto& t : e) s += (s.empty() ? "" : " + ") + to_string(t);
  return s.empty() ? "0" : s;
}

Term parse_word(const std::string& s) {
  Term t;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*') {
      ++i;
      continue;
    }
    if (ch == 'a' || ch == 'b' || ch == 'g' || ch == 'd') {
      Letter l = ch == 'a' ? alpha_l() : ch == 'b' ? beta_l() : ch == 'g' ? gamma_l() : delta_l();
      ++i;
      if (i < s.size() && s[i] == '\'') {
        l.star = true;
        ++i;
      }
      t.factors.push_back(l);
      continue;
    }
    if (ch == 'P') {
      auto close = s.find(')', i);
      if (i + 1 >= s.size() || s[i + 1] != '(' || close == std::string::npos)
        throw std::invalid_argument("parse_word: malformed projection at position " + std::to_string(i));
      std::string inner = s.substr(i + 2, close - i - 2);
      auto comma = inner.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("parse_word: projection needs two exponents");
      try {
        t.factors.push_back(CoefFn::projection(std::stol(inner.substr(0, comma)), std::stol(inner.substr(comma + 1))));
      } catch (const std::logic_error&) {
        throw std::invalid_argument("parse_word: bad projection exponents '" + inner + "'");
      }
      i = close + 1;
      continue;
    }
    throw std::invalid_argument(std::string("parse_word: unexpected character '") + ch + "'");
  }
  return t;
}

}  // namespace pcqg
