#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pcqg/coef.hpp"
#include "pcqg/dynsu2.hpp"

namespace pcqg {

// letters * f(lam, rho), the function acting first.
struct NormalTerm {
  std::vector<Letter> letters;
  CoefFn f;
};

// alpha^k beta^l gamma^m (head 'a') or delta^k beta^l gamma^m (head 'd').
struct Monomial {
  char head = '-';  // '-' when k = 0
  int k = 0, l = 0, m = 0;
};

struct ReduceOptions {
  std::size_t max_length = 8;
  std::size_t step_budget = 100000;
};

class RewriteError : public std::runtime_error {
 public:
  RewriteError(const std::string& what, std::string word) : std::runtime_error(what), word_(std::move(word)) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

bool is_normal(const std::vector<Letter>& letters);
Monomial monomial_of(const std::vector<Letter>& letters);

std::vector<NormalTerm> reduce_word(const Term& w, double q, const ReduceOptions& opt = {});
std::vector<NormalTerm> reduce_expr(const Expr& e, double q, const ReduceOptions& opt = {});
Expr to_expr(const std::vector<NormalTerm>& ts);

// Structural equality of two reduced forms.
bool same_normal_form(const std::vector<NormalTerm>& a, const std::vector<NormalTerm>& b);

// Residual of pi(w) - pi(reduce(w)) in a representation.
RelationResidual reduction_residual(const DynRep& rep, const Term& w, const std::vector<NormalTerm>& r,
                                    double tol = 1e-9);

nlohmann::json to_json(const std::vector<NormalTerm>& ts);

}  // namespace pcqg
