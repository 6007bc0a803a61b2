#include "conicmin/analysis.hpp"

#include "conicmin/poly_gcd.hpp"
#include "conicmin/poly_io.hpp"

#include <algorithm>

namespace conicmin {

namespace {

// ---------------------------------------------- dense Q[x] and Q[g]/(u)

using QPoly = std::vector<Rat>;  // little-endian

void qnorm(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

QPoly qsub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  qnorm(a);
  return a;
}

std::pair<QPoly, QPoly> qdivmod(QPoly a, const QPoly& b) {
  QPoly q;
  qnorm(a);
  if (a.size() >= b.size()) {
    q.assign(a.size() - b.size() + 1, Rat(0));
    for (int k = (int)q.size() - 1; k >= 0; --k) {
      Rat c = a[(size_t)k + b.size() - 1] / b.back();
      q[(size_t)k] = c;
      if (c != 0)
        for (size_t i = 0; i < b.size(); ++i) a[(size_t)k + i] -= c * b[i];
    }
    a.resize(b.size() - 1);
  }
  qnorm(a);
  qnorm(q);
  return {std::move(q), std::move(a)};
}

// extended euclid: returns (gcd, s, t) with s a + t b = gcd
std::tuple<QPoly, QPoly, QPoly> qxgcd(QPoly a, QPoly b) {
  QPoly s0{Rat(1)}, s1, t0, t1{Rat(1)};
  qnorm(a);
  qnorm(b);
  while (!b.empty()) {
    auto [q, r] = qdivmod(a, b);
    QPoly s2 = qsub(s0, qmul(q, s1));
    QPoly t2 = qsub(t0, qmul(q, t1));
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return {std::move(a), std::move(s0), std::move(t0)};
}

// the number field K = Q[g]/(u), elements as QPoly of degree < deg u
struct NumberField {
  QPoly u;  // monic

  QPoly reduce(QPoly a) const { return qdivmod(std::move(a), u).second; }
  QPoly mul(const QPoly& a, const QPoly& b) const { return reduce(qmul(a, b)); }
  QPoly inv(const QPoly& a) const {
    auto [g, s, t] = qxgcd(a, u);
    if (g.size() != 1) throw AnalysisError("non-invertible element modulo u");
    QPoly r = s;
    for (auto& c : r) c /= g[0];
    return reduce(std::move(r));
  }
  bool is_zero(const QPoly& a) const { return a.empty(); }
};

// univariate in h over K
using KPoly = std::vector<QPoly>;

void knorm(const NumberField& K, KPoly& f) {
  while (!f.empty() && K.is_zero(f.back())) f.pop_back();
}

KPoly krem(const NumberField& K, KPoly a, const KPoly& b) {
  knorm(K, a);
  QPoly lead_inv = K.inv(b.back());
  while (a.size() >= b.size()) {
    QPoly c = K.mul(a.back(), lead_inv);
    if (!K.is_zero(c)) {
      size_t off = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i)
        a[off + i] = K.reduce(qsub(a[off + i], qmul(c, b[i])));
    }
    a.pop_back();
    knorm(K, a);
    if (a.empty()) break;
  }
  return a;
}

KPoly kmonic(const NumberField& K, KPoly f) {
  knorm(K, f);
  if (f.empty()) return f;
  QPoly inv = K.inv(f.back());
  for (auto& c : f) c = K.mul(c, inv);
  return f;
}

KPoly kgcd(const NumberField& K, KPoly a, KPoly b) {
  knorm(K, a);
  knorm(K, b);
  while (!b.empty()) {
    KPoly r = krem(K, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return kmonic(K, std::move(a));
}

// f(g, h) as an element of K[h]
KPoly to_kpoly(const NumberField& K, const MultiPoly& f) {
  KPoly out;
  for (const auto& [e, c] : f.terms()) {
    size_t j = (size_t)e[1];
    if (out.size() <= j) out.resize(j + 1);
    QPoly& tgt = out[j];
    if (tgt.size() <= (size_t)e[0]) tgt.resize((size_t)e[0] + 1);
    tgt[(size_t)e[0]] += Rat(c);
  }
  for (auto& c : out) {
    qnorm(c);
    c = K.reduce(std::move(c));
  }
  KPoly r = out;
  knorm(K, r);
  return r;
}

QPoly to_qpoly(const MultiPoly& f, size_t var) {
  QPoly out;
  for (const auto& [e, c] : f.terms()) {
    if (out.size() <= (size_t)e[var]) out.resize((size_t)e[var] + 1);
    out[(size_t)e[var]] += Rat(c);
  }
  qnorm(out);
  return out;
}

QPoly monic(QPoly f) {
  qnorm(f);
  if (f.empty()) return f;
  Rat inv = 1 / f.back();
  for (auto& c : f) c *= inv;
  return f;
}

// integer primitive positive-leading representative of a Q-polynomial
MultiPoly qpoly_to_multipoly(const QPoly& f, const VarList& vars, size_t var) {
  Int den = 1;
  for (const auto& c : f) {
    Int d(c.get_den());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  MultiPoly r(vars);
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    Expvec e(vars.size(), 0);
    e[var] = (int)i;
    r.add_term(e, Int(f[i].get_num()) * (den / Int(f[i].get_den())));
  }
  if (r.is_zero()) return r;
  return normalize_sign(r.primitive_part());
}

MultiPoly kpoly_to_multipoly(const KPoly& f, const VarList& vars) {
  // clear denominators across all coefficients
  Int den = 1;
  for (const auto& kc : f)
    for (const auto& c : kc) {
      Int d(c.get_den());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
  MultiPoly r(vars);
  for (size_t j = 0; j < f.size(); ++j)
    for (size_t i = 0; i < f[j].size(); ++i) {
      if (f[j][i] == 0) continue;
      r.add_term({(int)i, (int)j}, Int(f[j][i].get_num()) * (den / Int(f[j][i].get_den())));
    }
  if (r.is_zero()) return r;
  return normalize_sign(r.primitive_part());
}

MultiPoly squarefree_part(const MultiPoly& f) {
  MultiPoly r = MultiPoly::constant(f.vars(), 1);
  for (const auto& [a, m] : squarefree_decomposition(normalize_sign(f.primitive_part())))
    r = r * a;
  return r;
}

}  // namespace

std::vector<ConditionPair> singular_points(const MultiPoly& f) {
  if (f.is_zero()) throw AnalysisError("singular_points of zero");
  if (f.vars().size() != 2) throw AnalysisError("singular_points needs two variables");
  const VarList& vars = f.vars();
  MultiPoly fg = f.derivative(0), fh = f.derivative(1);
  if (!poly_gcd(f, poly_gcd(fg, fh)).is_constant())
    throw AnalysisError("singular_points: input is not squarefree");

  std::vector<ConditionPair> out;
  if (f.degree_in(0) == 0 || f.degree_in(1) == 0) return out;  // smooth fibres

  // candidate eliminant in g: gcd of the nonzero pairwise resultants
  auto elim = [&](size_t kill) {
    MultiPoly acc = MultiPoly::zero(vars);
    int nonzero = 0;
    const std::array<std::pair<const MultiPoly*, const MultiPoly*>, 3> pairs{
        {{&f, &fg}, {&f, &fh}, {&fg, &fh}}};
    for (const auto& pr : pairs) {
      if (pr.first->is_zero() || pr.second->is_zero()) continue;
      MultiPoly r = resultant(*pr.first, *pr.second, kill);
      if (r.is_zero()) continue;
      ++nonzero;
      acc = poly_gcd(acc, r);
    }
    if (nonzero == 0)
      throw AnalysisError("singular_points: positive-dimensional singular locus");
    return acc;
  };
  MultiPoly eg = elim(1);  // eliminate h: conditions on g
  if (eg.is_constant()) return out;

  FactorBudget budget;
  auto eg_factored = factor_univariate(eg, budget);
  for (const auto& [u, mult] : eg_factored.poly_factors) {
    if (u.degree_in(0) == 0) continue;  // stray factor in the wrong variable
    NumberField K{monic(to_qpoly(u, 0))};
    KPoly a = to_kpoly(K, f), b = to_kpoly(K, fg), c = to_kpoly(K, fh);
    KPoly d = kgcd(K, kgcd(K, a, b), c);
    if (d.size() <= 1) continue;  // no common root above this u

    bool rational_coeffs = true;
    for (const auto& kc : d) rational_coeffs = rational_coeffs && kc.size() <= 1;
    if (rational_coeffs) {
      QPoly dq(d.size());
      for (size_t i = 0; i < d.size(); ++i) dq[i] = d[i].empty() ? Rat(0) : d[i][0];
      MultiPoly dm = qpoly_to_multipoly(dq, vars, 1);
      auto dfac = factor_univariate(squarefree_part(dm), budget);
      for (const auto& [w, wm] : dfac.poly_factors)
        out.push_back(ConditionPair{u, w, std::nullopt});
    } else {
      MultiPoly pairing = kpoly_to_multipoly(d, vars);
      MultiPoly hcond = squarefree_part(resultant(u, pairing, 0));
      out.push_back(ConditionPair{u, hcond, pairing});
    }
  }

  std::sort(out.begin(), out.end(), [](const ConditionPair& x, const ConditionPair& y) {
    if (x.g_condition.total_degree() != y.g_condition.total_degree())
      return x.g_condition.total_degree() < y.g_condition.total_degree();
    int c = x.g_condition.compare(y.g_condition);
    if (c != 0) return c < 0;
    return x.h_condition.compare(y.h_condition) < 0;
  });
  return out;
}

namespace {

// reduction of f modulo the pair's ideal, flattened to a rational vector
// over the basis g^i h^j
std::vector<Rat> reduce_mod_pair(const ConditionPair& cp, const MultiPoly& f) {
  NumberField K{monic(to_qpoly(cp.g_condition, 0))};
  KPoly mod = cp.pairing ? to_kpoly(K, *cp.pairing) : to_kpoly(K, cp.h_condition);
  mod = kmonic(K, std::move(mod));
  KPoly r = krem(K, to_kpoly(K, f), mod);
  const size_t du = K.u.size() - 1, dh = mod.size() - 1;
  std::vector<Rat> flat(du * dh);
  for (size_t j = 0; j < r.size(); ++j)
    for (size_t i = 0; i < r[j].size(); ++i) flat[j * du + i] = r[j][i];
  return flat;
}

}  // namespace

bool condition_pair_annihilates(const ConditionPair& c, const MultiPoly& f) {
  auto all_zero = [&](const MultiPoly& p) {
    for (const auto& x : reduce_mod_pair(c, p))
      if (x != 0) return false;
    return true;
  };
  return all_zero(f) && all_zero(f.derivative(0)) && all_zero(f.derivative(1));
}

std::vector<MultiPoly> quadratic_ansatz(const std::vector<ConditionPair>& conditions,
                                        const VarList& vars) {
  // generic quadric monomials in the fixed order
  const std::array<Expvec, 6> mons{Expvec{2, 0}, Expvec{1, 1}, Expvec{0, 2},
                                   Expvec{1, 0}, Expvec{0, 1}, Expvec{0, 0}};
  std::vector<std::array<Rat, 6>> rows;
  for (const auto& cp : conditions) {
    std::vector<std::vector<Rat>> cols;
    size_t n = 0;
    for (size_t k = 0; k < 6; ++k) {
      MultiPoly m = MultiPoly::monomial(vars, mons[k], 1);
      cols.push_back(reduce_mod_pair(cp, m));
      n = std::max(n, cols.back().size());
    }
    for (size_t r = 0; r < n; ++r) {
      std::array<Rat, 6> row;
      bool nonzero = false;
      for (size_t k = 0; k < 6; ++k) {
        row[k] = r < cols[k].size() ? cols[k][r] : Rat(0);
        nonzero = nonzero || row[k] != 0;
      }
      if (nonzero) rows.push_back(row);
    }
  }

  // rational gaussian elimination; nullspace basis
  std::vector<int> pivot_col;
  size_t rank = 0;
  for (size_t col = 0; col < 6 && rank < rows.size(); ++col) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    Rat inv = 1 / rows[rank][col];
    for (auto& x : rows[rank]) x *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rat c = rows[r][col];
      for (size_t k = 0; k < 6; ++k) rows[r][k] -= c * rows[rank][k];
    }
    pivot_col.push_back((int)col);
    ++rank;
  }

  std::vector<MultiPoly> basis;
  for (int free_col = 0; free_col < 6; ++free_col) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) continue;
    std::array<Rat, 6> sol{};
    sol[(size_t)free_col] = 1;
    for (size_t r = 0; r < rank; ++r) sol[(size_t)pivot_col[r]] = -rows[r][(size_t)free_col];
    Int den = 1;
    for (const auto& c : sol) {
      Int d(c.get_den());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    MultiPoly q(vars);
    for (size_t k = 0; k < 6; ++k) {
      if (sol[k] == 0) continue;
      q.add_term(mons[k], Int(sol[k].get_num()) * (den / Int(sol[k].get_den())));
    }
    basis.push_back(normalize_sign(q.primitive_part()));
  }
  return basis;
}

ResultantReport resultant_report(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero() || g.is_zero()) throw AnalysisError("resultant_report of zero");
  FactorBudget budget;
  MultiPoly rg = resultant(f, g, 0);
  MultiPoly rh = resultant(f, g, 1);
  ResultantReport out{rg, rh, {}, {}};
  out.res_g_factored = rg.is_zero() ? Factorization{} : factor_bivariate(rg, budget);
  out.res_h_factored = rh.is_zero() ? Factorization{} : factor_bivariate(rh, budget);
  return out;
}

// --------------------------------------------------------------- fixtures

const VarList& gh_vars() {
  static const VarList v{"g", "h"};
  return v;
}

const VarList& mn_vars() {
  static const VarList v{"m", "n"};
  return v;
}

namespace {
MultiPoly gh(const char* s) { return parse_poly(s, gh_vars()); }
}  // namespace

const MultiPoly& lambda21_fixture() {
  static const MultiPoly f = gh(
      "189*g^6 - 594*g^5*h + 621*g^4*h^2 - 216*g^3*h^3 - 378*g^4 + 1116*g^3*h - "
      "954*g^2*h^2 + 184*g*h^3 + 16*h^4 + 205*g^2 - 522*g*h + 349*h^2 - 16");
  return f;
}

const MultiPoly& q21_fixture() {
  static const MultiPoly f = gh("18*g^2 - 12*g*h - 12*h^2 - 14");
  return f;
}

const MultiPoly& lambda40_factor1() {
  static const MultiPoly f = gh("g^2 - h^2 - 1");
  return f;
}

const MultiPoly& lambda40_factor2() {
  static const MultiPoly f = gh(
      "9*g^4 - 17*g^2*h^2 + 8*h^4 - 12*g^3 + 12*g*h^2 + 7*g^2 - 8*h^2 + 10*g + 2");
  return f;
}

const MultiPoly& lambda40_fixture() {
  static const MultiPoly f = lambda40_factor1() * lambda40_factor2();
  return f;
}

const MultiPoly& q40_candidate() {
  static const MultiPoly f = gh("-15*g^2 + 14*h^2 + 10*g + 5");
  return f;
}

const std::vector<std::pair<int, MultiPoly>>& qd_table() {
  static const std::vector<std::pair<int, MultiPoly>> t = {
      {5, gh("-6*(10*g + 3)*(15*g + 2)")},
      {8, gh("4*g + 4*h - 7")},
      {12, gh("-(h - 1)*(3*h^3 + 9*h^2 - 27*g - 4*h - 8)")},
      {13, gh("-100*g^2 + 385*g*h - 48*h^2 + 194*g + 168*h - 108")},
      {17, gh("1")},
      {21, gh("18*g^2 - 12*g*h - 12*h^2 - 14")},
      {24, gh("12*g*h^2 - 3*g^2 - 2*h^2 + 3")},
      {28, gh("-2*(19*g^2 + 35*h^2 + 84*h + 28)")},
      {29, gh("-6*g^2 - 6*g*h + 65*g - 16*h^2 - 156*h + 4")},
      {33, gh("1")},
      {37, gh("g^2 + 15*g*h + 20*g - 27*h^2 + 2*h - 11")},
      {44, gh("(g*h + h - 1)*(5*g^3*h + 9*g^2*h + 6*g^2 - 4*g*h + 18*g - 8*h + 19)")},
      {53, gh("-(25*h^2 + 42*h + 24)*g^2 - (h + 1)^2*(26*h + 7)*g - 11*(h + 1)^4")},
      {61, gh("-3*(3*h^2 + 7*h - 1)*g^2 + 2*(9*h^3 + 12*h^2 - 10*h - 1)*g - 9*h^4 - "
              "3*h^3 + 8*h^2 + 8*h - 20")},
  };
  return t;
}

const std::vector<std::pair<int, MultiPoly>>& pd_table() {
  static const std::vector<std::pair<int, MultiPoly>> t = [] {
    auto mn = [](const char* s) { return parse_poly(s, mn_vars()); };
    return std::vector<std::pair<int, MultiPoly>>{
        {5, mn("m^2 - 5*n^2 - 5")},
        {8, mn("-(m + 1)")},
        {12, mn("-27*m^2 + n^2 + 27")},
        {13, mn("1803*m^2 - 72*m*n + n^2 + 3168*m - 1440*n - 768")},
        {17, mn("1")},
    };
  }();
  return t;
}

}  // namespace conicmin
