#include "pcqg/rewrite.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace pcqg {

namespace {

int rank_of(const Letter& l) {
  if (l.eps == l.nu) return 0;  // alpha, delta
  return l.eps < 0 ? 1 : 2;     // beta, gamma
}

bool is_bad(const Letter& x, const Letter& y) {
  if (rank_of(x) > rank_of(y)) return true;
  return rank_of(x) == 0 && rank_of(y) == 0 && x.eps != y.eps;
}

struct Piece {
  std::vector<Letter> letters;
  CoefFn g;
};

CoefFn T(int a, int s, int t, int p) { return CoefFn::tau_pow(a, s, t, p); }

// Oriented rules for an out-of-order pair; g acts first.
std::vector<Piece> rule(const Letter& x, const Letter& y, double q) {
  const Letter a = alpha_l(), b = beta_l(), g = gamma_l(), d = delta_l();
  const double dq = q - 1.0 / q;
  auto is = [](const Letter& u, const Letter& v) { return u.eps == v.eps && u.nu == v.nu; };
  if (is(x, b) && is(y, a)) return {{{a, b}, T(-1, 0, 1, 1) * T(1, 0, 1, -1)}};
  if (is(x, g) && is(y, a)) return {{{a, g}, T(-1, 1, 0, 1) * T(1, 1, 0, -1)}};
  if (is(x, b) && is(y, d)) return {{{d, b}, T(1, 1, 0, 1) * T(-1, 1, 0, -1)}};
  if (is(x, g) && is(y, d)) return {{{d, g}, T(1, 0, 1, 1) * T(-1, 0, 1, -1)}};
  if (is(x, g) && is(y, b)) {
    CoefFn A = T(1, 0, 1, 1) * T(-1, 1, 0, 1) * T(-1, 0, 1, -1) * T(1, 1, 0, -1);
    CoefFn den = T(0, 1, 0, -1) * T(-1, 0, 1, -1) * T(1, 1, 0, -1) * T(0, 0, 1, -1);
    return {{{b, g}, A}, {{}, CoefFn::monomial(2, -2, -dq) * den}, {{}, CoefFn::monomial(-2, 2, dq) * den}};
  }
  if (is(x, a) && is(y, d))
    return {{{}, T(0, 0, 1, 1) * T(-1, 1, 0, 1) * T(0, 1, 0, -1) * T(-1, 0, 1, -1)},
            {{b, g}, T(1, 0, 1, 1) * T(-1, 0, 1, -1)}};
  if (is(x, d) && is(y, a))
    return {{{}, T(1, 0, 1, 1) * T(0, 1, 0, 1) * T(1, 1, 0, -1) * T(0, 0, 1, -1)},
            {{b, g}, T(-1, 1, 0, 1) * T(1, 1, 0, -1)}};
  throw std::logic_error("rewrite: no rule for pair");
}

std::pair<int, int> displacement(const std::vector<Letter>& ls, std::size_t from = 0) {
  int dl = 0, dr = 0;
  for (std::size_t i = from; i < ls.size(); ++i) {
    dl -= ls[i].eps;
    dr -= ls[i].nu;
  }
  return {dl, dr};
}

// Stars removed and all functions collected on the right.
NormalTerm flatten(const Term& t) {
  std::deque<Letter> L;
  CoefFn f = CoefFn::constant(1.0);
  int dl = 0, dr = 0;
  for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
    if (auto* g = std::get_if<CoefFn>(&*it)) {
      f = g->shifted(dl, dr) * f;
      continue;
    }
    Letter l = std::get<Letter>(*it);
    if (l.star) {
      // u*_{e,n} = u_{-e,-n} * e n w_n(rho)^1/2 w_e(lam)^-1/2
      CoefFn h = CoefFn::constant(static_cast<double>(l.eps * l.nu)) * CoefFn::w_rho(l.nu, 1) * CoefFn::w_lam(l.eps, -1);
      f = h.shifted(dl, dr) * f;
      l = Letter{-l.eps, -l.nu, false};
    }
    L.push_front(l);
    dl -= l.eps;
    dr -= l.nu;
  }
  return {std::vector<Letter>(L.begin(), L.end()), f};
}

std::string word_string(const std::vector<Letter>& ls) {
  Term t;
  for (auto& l : ls) t.factors.push_back(l);
  return to_string(t);
}

std::vector<NormalTerm> combine(std::vector<NormalTerm> ts, double q) {
  std::vector<NormalTerm> out;
  std::vector<double> mass;
  for (auto& t : ts) {
    if (t.f.is_zero()) continue;
    double v = t.f.numeric_scale(q);
    bool merged = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].letters == t.letters && out[i].f.same_shape(t.f)) {
        out[i].f.scale += v;
        mass[i] += std::abs(v);
        merged = true;
        break;
      }
    }
    if (!merged) {
      t.f.scale = v;
      t.f.qpow2 = 0;
      out.push_back(std::move(t));
      mass.push_back(std::abs(v));
    }
  }
  std::vector<NormalTerm> kept;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (std::abs(out[i].f.scale) > 1e-13 * mass[i]) kept.push_back(std::move(out[i]));
  std::sort(kept.begin(), kept.end(), [](const NormalTerm& x, const NormalTerm& y) {
    auto mx = monomial_of(x.letters), my = monomial_of(y.letters);
    auto kx = std::make_tuple(mx.head, mx.k, mx.l, mx.m, x.f.str());
    auto ky = std::make_tuple(my.head, my.k, my.l, my.m, y.f.str());
    return kx < ky;
  });
  return kept;
}

}  // namespace

bool is_normal(const std::vector<Letter>& ls) {
  for (const auto& l : ls)
    if (l.star) return false;
  for (std::size_t i = 0; i + 1 < ls.size(); ++i)
    if (is_bad(ls[i], ls[i + 1])) return false;
  return true;
}

Monomial monomial_of(const std::vector<Letter>& ls) {
  Monomial m;
  for (const auto& l : ls) {
    switch (rank_of(l)) {
      case 0:
        m.head = l.eps < 0 ? 'a' : 'd';
        ++m.k;
        break;
      case 1: ++m.l; break;
      default: ++m.m; break;
    }
  }
  return m;
}

std::vector<NormalTerm> reduce_word(const Term& w, double q, const ReduceOptions& opt) {
  std::size_t letters = 0;
  for (const auto& f : w.factors) letters += std::holds_alternative<Letter>(f);
  if (letters > opt.max_length)
    throw RewriteError("reduce_word: word length " + std::to_string(letters) + " exceeds bound " +
                           std::to_string(opt.max_length),
                       to_string(w));
  std::vector<NormalTerm> todo{flatten(w)}, done;
  std::size_t steps = 0;
  while (!todo.empty()) {
    NormalTerm t = std::move(todo.back());
    todo.pop_back();
    if (t.f.is_zero()) continue;
    std::size_t i = 0;
    while (i + 1 < t.letters.size() && !is_bad(t.letters[i], t.letters[i + 1])) ++i;
    if (i + 1 >= t.letters.size()) {
      done.push_back(std::move(t));
      continue;
    }
    if (++steps > opt.step_budget)
      throw RewriteError("reduce_word: step budget exhausted", word_string(t.letters));
    auto [dl, dr] = displacement(t.letters, i + 2);
    for (auto& p : rule(t.letters[i], t.letters[i + 1], q)) {
      NormalTerm n;
      n.letters.assign(t.letters.begin(), t.letters.begin() + i);
      n.letters.insert(n.letters.end(), p.letters.begin(), p.letters.end());
      n.letters.insert(n.letters.end(), t.letters.begin() + i + 2, t.letters.end());
      n.f = p.g.shifted(dl, dr) * t.f;
      todo.push_back(std::move(n));
    }
  }
  return combine(std::move(done), q);
}

std::vector<NormalTerm> reduce_expr(const Expr& e, double q, const ReduceOptions& opt) {
  std::vector<NormalTerm> all;
  for (const auto& t : e) {
    auto r = reduce_word(t, q, opt);
    all.insert(all.end(), r.begin(), r.end());
  }
  return combine(std::move(all), q);
}

Expr to_expr(const std::vector<NormalTerm>& ts) {
  Expr e;
  for (const auto& t : ts) {
    Term w;
    for (const auto& l : t.letters) w.factors.push_back(l);
    w.factors.push_back(t.f);
    e.push_back(std::move(w));
  }
  return e;
}

bool same_normal_form(const std::vector<NormalTerm>& a, const std::vector<NormalTerm>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].letters != b[i].letters || !a[i].f.same_shape(b[i].f)) return false;
    if (a[i].f.scale != b[i].f.scale || a[i].f.qpow2 != b[i].f.qpow2) return false;
  }
  return true;
}

RelationResidual reduction_residual(const DynRep& rep, const Term& w, const std::vector<NormalTerm>& r, double tol) {
  return expr_difference(rep, "word = reduced form", Expr{w}, to_expr(r), tol);
}

nlohmann::json to_json(const std::vector<NormalTerm>& ts) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& t : ts) {
    auto m = monomial_of(t.letters);
    j.push_back({{"head", std::string(1, m.head)},
                 {"k", m.k},
                 {"l", m.l},
                 {"m", m.m},
                 {"letters", word_string(t.letters)},
                 {"coefficient", t.f.str()}});
  }
  return j;
}

}  // namespace pcqg
