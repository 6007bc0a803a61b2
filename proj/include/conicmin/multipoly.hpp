// Sparse multivariate polynomials with arbitrary-precision integer
// coefficients.  Terms are kept in graded reverse lexicographic order,
// leading term first; no stored term has a zero coefficient.
#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conicmin {

using Int = mpz_class;
using Rat = mpq_class;

using VarList = std::vector<std::string>;
using Expvec = std::vector<int>;

inline int expvec_total(const Expvec& e) {
  int t = 0;
  for (int x : e) t += x;
  return t;
}

// Strict order placing grevlex-larger monomials first.
struct GrevlexDesc {
  bool operator()(const Expvec& a, const Expvec& b) const {
    const int da = expvec_total(a), db = expvec_total(b);
    if (da != db) return da > db;
    for (size_t i = a.size(); i-- > 0;) {
      const int d = a[i] - b[i];
      if (d != 0) return d < 0;
    }
    return false;
  }
};

class MultiPoly {
 public:
  using TermMap = std::map<Expvec, Int, GrevlexDesc>;

  MultiPoly() = default;
  explicit MultiPoly(VarList vars) : vars_(std::move(vars)) {}

  static MultiPoly zero(const VarList& vars) { return MultiPoly(vars); }
  static MultiPoly constant(const VarList& vars, Int c);
  static MultiPoly variable(const VarList& vars, const std::string& name);
  static MultiPoly monomial(const VarList& vars, Expvec e, Int c);

  const VarList& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  size_t nvars() const { return vars_.size(); }
  size_t var_index(const std::string& name) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Requires is_constant(); zero yields 0.
  Int constant_value() const;
  bool is_one() const { return is_constant() && constant_value() == 1; }
  bool is_unit() const;  // +-1

  int total_degree() const;            // -1 for the zero polynomial
  int degree_in(size_t var) const;     // -1 for the zero polynomial
  size_t term_count() const { return terms_.size(); }

  const Expvec& leading_exponent() const;
  const Int& leading_coeff() const;

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly operator*(const Int& c) const;

  bool operator==(const MultiPoly& o) const {
    return vars_ == o.vars_ && terms_ == o.terms_;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  // Deterministic total order (vars, then term sequence); used for
  // canonical sorting of factor lists and search children.
  int compare(const MultiPoly& o) const;

  Int content() const;          // positive gcd of coefficients, 0 for zero
  MultiPoly primitive_part() const;  // sign retained; zero stays zero

  MultiPoly derivative(size_t var) const;

  // Exact division; nullopt when the divisor does not divide exactly.
  std::optional<MultiPoly> divided_exact(const MultiPoly& d) const;
  bool divisible_by(const MultiPoly& d) const { return divided_exact(d).has_value(); }

  // Substitute an integer for one variable (the variable stays in the
  // ring with exponent zero).
  MultiPoly eval_var(size_t var, const Int& value) const;

  // Largest e with pi^e dividing *this (pi nonconstant); requires nonzero.
  int valuation(const MultiPoly& pi) const;
  // p-adic valuation of the integer content; requires nonzero.
  int valuation_int(const Int& p) const;

  MultiPoly with_vars(const VarList& target) const;  // rename-free embedding

  void add_term(const Expvec& e, const Int& c);  // accumulate, strip zeros
  std::string str() const;                       // canonical textual form

 private:
  void check_compatible(const MultiPoly& o) const;
  VarList vars_;
  TermMap terms_;
};

MultiPoly operator*(const Int& c, const MultiPoly& p);

// Dense univariate view: poly must involve only `var`.
std::vector<Int> to_dense(const MultiPoly& f, size_t var);
MultiPoly from_dense(const VarList& vars, size_t var, const std::vector<Int>& coeffs);

}  // namespace conicmin
