#include "conicmin/multipoly.hpp"

#include "conicmin/deadline.hpp"

#include <algorithm>
#include <sstream>

namespace conicmin {

MultiPoly MultiPoly::constant(const VarList& vars, Int c) {
  MultiPoly p(vars);
  if (c != 0) p.terms_.emplace(Expvec(vars.size(), 0), std::move(c));
  return p;
}

MultiPoly MultiPoly::variable(const VarList& vars, const std::string& name) {
  MultiPoly p(vars);
  Expvec e(vars.size(), 0);
  e[p.var_index(name)] = 1;
  p.terms_.emplace(std::move(e), Int(1));
  return p;
}

MultiPoly MultiPoly::monomial(const VarList& vars, Expvec e, Int c) {
  if (e.size() != vars.size()) throw std::invalid_argument("monomial: exponent arity");
  MultiPoly p(vars);
  if (c != 0) p.terms_.emplace(std::move(e), std::move(c));
  return p;
}

size_t MultiPoly::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  throw std::invalid_argument("unknown variable '" + name + "'");
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && expvec_total(terms_.begin()->first) == 0;
}

Int MultiPoly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("constant_value on nonconstant polynomial");
  return terms_.begin()->second;
}

bool MultiPoly::is_unit() const {
  if (!is_constant()) return false;
  Int c = constant_value();
  return c == 1 || c == -1;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return expvec_total(terms_.begin()->first);  // leading term has max degree
}

int MultiPoly::degree_in(size_t var) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

const Expvec& MultiPoly::leading_exponent() const {
  if (terms_.empty()) throw std::logic_error("leading_exponent of zero");
  return terms_.begin()->first;
}

const Int& MultiPoly::leading_coeff() const {
  if (terms_.empty()) throw std::logic_error("leading_coeff of zero");
  return terms_.begin()->second;
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("polynomials over different variable lists");
}

void MultiPoly::add_term(const Expvec& e, const Int& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r(*this);
  r += o;
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r(*this);
  r -= o;
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r(vars_);
  if (terms_.empty() || o.terms_.empty()) return r;
  Expvec e(vars_.size());
  Int c;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      c = ca * cb;
      r.add_term(e, c);
    }
  }
  return r;
}

MultiPoly MultiPoly::operator*(const Int& c) const {
  MultiPoly r(vars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

MultiPoly operator*(const Int& c, const MultiPoly& p) { return p * c; }

int MultiPoly::compare(const MultiPoly& o) const {
  if (vars_ != o.vars_) return vars_ < o.vars_ ? -1 : 1;
  auto a = terms_.begin(), b = o.terms_.begin();
  GrevlexDesc lt;
  for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
    if (lt(a->first, b->first)) return 1;
    if (lt(b->first, a->first)) return -1;
    const int s = cmp(a->second, b->second);
    if (s != 0) return s;
  }
  if (a != terms_.end()) return 1;
  if (b != o.terms_.end()) return -1;
  return 0;
}

Int MultiPoly::content() const {
  Int g = 0;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

MultiPoly MultiPoly::primitive_part() const {
  if (terms_.empty()) return *this;
  const Int g = content();
  if (g == 1) return *this;
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c / g);
  return r;
}

MultiPoly MultiPoly::derivative(size_t var) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Expvec e2 = e;
    e2[var] -= 1;
    r.terms_.emplace(std::move(e2), c * e[var]);
  }
  return r;
}

std::optional<MultiPoly> MultiPoly::divided_exact(const MultiPoly& d) const {
  check_compatible(d);
  if (d.is_zero()) return std::nullopt;
  MultiPoly q(vars_), r(*this);
  const Expvec& de = d.leading_exponent();
  const Int& dc = d.leading_coeff();
  Expvec e(vars_.size());
  while (!r.is_zero()) {
    check_deadline();
    const Expvec& re = r.leading_exponent();
    for (size_t i = 0; i < e.size(); ++i) {
      e[i] = re[i] - de[i];
      if (e[i] < 0) return std::nullopt;
    }
    Int qc = r.leading_coeff() / dc;
    if (qc * dc != r.leading_coeff()) return std::nullopt;
    MultiPoly t = MultiPoly::monomial(vars_, e, qc);
    q += t;
    r -= t * d;
  }
  return q;
}

MultiPoly MultiPoly::eval_var(size_t var, const Int& value) const {
  MultiPoly r(vars_);
  // powers cached up to the maximum exponent seen
  std::vector<Int> pow{Int(1)};
  for (const auto& [e, c] : terms_) {
    const int k = e[var];
    while ((int)pow.size() <= k) pow.push_back(pow.back() * value);
    Expvec e2 = e;
    e2[var] = 0;
    r.add_term(e2, c * pow[k]);
  }
  return r;
}

int MultiPoly::valuation(const MultiPoly& pi) const {
  if (is_zero()) throw std::invalid_argument("valuation of zero");
  int v = 0;
  MultiPoly f = *this;
  while (true) {
    auto q = f.divided_exact(pi);
    if (!q) return v;
    f = std::move(*q);
    ++v;
  }
}

int MultiPoly::valuation_int(const Int& p) const {
  if (is_zero()) throw std::invalid_argument("valuation of zero");
  Int c = content();
  int v = 0;
  while (mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t())) {
    c /= p;
    ++v;
  }
  return v;
}

MultiPoly MultiPoly::with_vars(const VarList& target) const {
  if (target == vars_) return *this;
  std::vector<size_t> where(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(target.begin(), target.end(), vars_[i]);
    if (it == target.end())
      throw std::invalid_argument("with_vars: target misses variable '" + vars_[i] + "'");
    where[i] = (size_t)(it - target.begin());
  }
  MultiPoly r(target);
  for (const auto& [e, c] : terms_) {
    Expvec e2(target.size(), 0);
    for (size_t i = 0; i < vars_.size(); ++i) e2[where[i]] = e[i];
    r.terms_.emplace(std::move(e2), c);
  }
  return r;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Int a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    const bool has_vars = expvec_total(e) > 0;
    bool printed = false;
    if (!has_vars || a != 1) {
      out << a.get_str();
      printed = true;
    }
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (printed) out << "*";
      out << vars_[i];
      if (e[i] > 1) out << "^" << e[i];
      printed = true;
    }
  }
  return out.str();
}

std::vector<Int> to_dense(const MultiPoly& f, size_t var) {
  std::vector<Int> out;
  if (f.is_zero()) return out;
  out.assign((size_t)f.degree_in(var) + 1, Int(0));
  for (const auto& [e, c] : f.terms()) {
    for (size_t i = 0; i < e.size(); ++i)
      if (i != var && e[i] != 0)
        throw std::invalid_argument("to_dense: polynomial is not univariate in the chosen variable");
    out[(size_t)e[var]] = c;
  }
  return out;
}

MultiPoly from_dense(const VarList& vars, size_t var, const std::vector<Int>& coeffs) {
  MultiPoly r(vars);
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    Expvec e(vars.size(), 0);
    e[var] = (int)k;
    r.add_term(e, coeffs[k]);
  }
  return r;
}

}  // namespace conicmin
