#include "conicmin/rational_function.hpp"

#include "conicmin/poly_gcd.hpp"

#include <algorithm>

namespace conicmin {

RationalFunction::RationalFunction(MultiPoly num)
    : num_(std::move(num)), den_(MultiPoly::constant(num_.vars(), 1)) {}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("rational function with zero denominator");
  if (num_.vars() != den_.vars())
    throw std::invalid_argument("rational function over mixed variable lists");
  reduce();
}

RationalFunction RationalFunction::constant(const VarList& vars, const Rat& q) {
  return RationalFunction(MultiPoly::constant(vars, Int(q.get_num())),
                          MultiPoly::constant(vars, Int(q.get_den())));
}

RationalFunction RationalFunction::one(const VarList& vars) {
  return RationalFunction(MultiPoly::constant(vars, 1));
}

void RationalFunction::reduce() {
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(num_.vars(), 1);
    return;
  }
  MultiPoly g = poly_gcd(num_, den_);
  if (!g.is_one()) {
    num_ = *num_.divided_exact(g);
    den_ = *den_.divided_exact(g);
  }
  if (den_.leading_coeff() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

MultiPoly RationalFunction::as_polynomial() const {
  if (num_.is_zero()) return num_;
  if (!den_.is_one()) throw std::logic_error("rational function is not polynomial");
  return num_;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw std::invalid_argument("division by zero rational function");
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

std::string RationalFunction::str() const {
  if (is_polynomial()) return as_polynomial().str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalFunction substitute(const MultiPoly& f,
                            const std::map<std::string, RationalFunction>& assignment) {
  // target ring: from any assigned value, else the source ring
  VarList target = f.vars();
  for (const auto& [k, v] : assignment) {
    target = v.vars();
    break;
  }
  for (const auto& [k, v] : assignment)
    if (v.vars() != target)
      throw std::invalid_argument("substitute: assignment values over mixed variable lists");

  std::vector<RationalFunction> image;
  image.reserve(f.nvars());
  for (const auto& name : f.vars()) {
    auto it = assignment.find(name);
    if (it != assignment.end()) {
      image.push_back(it->second);
    } else {
      image.push_back(RationalFunction(MultiPoly::variable(target, name)));
    }
  }

  // term-wise with cached powers per variable
  std::vector<std::vector<RationalFunction>> powers(f.nvars());
  for (size_t i = 0; i < f.nvars(); ++i) powers[i].push_back(RationalFunction::one(target));
  auto power = [&](size_t i, int e) -> const RationalFunction& {
    while ((int)powers[i].size() <= e) powers[i].push_back(powers[i].back() * image[i]);
    return powers[i][(size_t)e];
  };

  RationalFunction acc(MultiPoly::zero(target));
  for (const auto& [e, c] : f.terms()) {
    RationalFunction t(MultiPoly::constant(target, c));
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t = t * power(i, e[i]);
    acc = acc + t;
  }
  return acc;
}

MultiPoly homogenize(const MultiPoly& f, int d, const std::string& fresh_var) {
  if (f.total_degree() > d) throw std::invalid_argument("homogenize: degree exceeds target");
  for (const auto& v : f.vars())
    if (v == fresh_var) throw std::invalid_argument("homogenize: variable already present");
  VarList vars = f.vars();
  vars.push_back(fresh_var);
  MultiPoly r(vars);
  for (const auto& [e, c] : f.terms()) {
    Expvec e2 = e;
    e2.push_back(d - expvec_total(e));
    r.add_term(e2, c);
  }
  return r;
}

MultiPoly dehomogenize(const MultiPoly& f, const std::string& var) {
  const size_t idx = f.var_index(var);
  VarList vars;
  for (size_t i = 0; i < f.nvars(); ++i)
    if (i != idx) vars.push_back(f.vars()[i]);
  MultiPoly r(vars);
  for (const auto& [e, c] : f.terms()) {
    Expvec e2;
    e2.reserve(vars.size());
    for (size_t i = 0; i < e.size(); ++i)
      if (i != idx) e2.push_back(e[i]);
    r.add_term(e2, c);
  }
  return r;
}

}  // namespace conicmin
