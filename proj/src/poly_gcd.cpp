#include "conicmin/poly_gcd.hpp"

#include "conicmin/deadline.hpp"

#include <algorithm>

namespace conicmin {

namespace {

// Coefficients of f viewed in (Z[other vars])[var].
std::vector<MultiPoly> coeffs_in(const MultiPoly& f, size_t var) {
  std::vector<MultiPoly> out((size_t)std::max(f.degree_in(var), 0) + 1,
                             MultiPoly::zero(f.vars()));
  for (const auto& [e, c] : f.terms()) {
    Expvec e2 = e;
    e2[var] = 0;
    out[(size_t)e[var]].add_term(e2, c);
  }
  return out;
}

bool is_monomial(const MultiPoly& f) { return f.term_count() == 1; }

MultiPoly monomial_gcd(const MultiPoly& f, const MultiPoly& g) {
  // both nonzero, at least one a monomial: gcd is a monomial
  Expvec e(f.nvars(), 0);
  bool first = true;
  Int c = 0;
  for (const MultiPoly* p : {&f, &g}) {
    for (const auto& [pe, pc] : p->terms()) {
      if (first) {
        e = pe;
        first = false;
      } else {
        for (size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], pe[i]);
      }
      mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), pc.get_mpz_t());
    }
  }
  return MultiPoly::monomial(f.vars(), e, c);
}

// Exact pseudo-remainder lc(g)^(delta+1) f mod g w.r.t. var, where
// delta = deg_var f - deg_var g (deg_var f >= deg_var g >= 1).
MultiPoly pseudo_rem(MultiPoly f, const MultiPoly& g, size_t var) {
  const int dg = g.degree_in(var);
  const int delta = f.degree_in(var) - dg;
  auto gc = coeffs_in(g, var);
  const MultiPoly& lg = gc.back();
  int scaled = 0;
  while (!f.is_zero() && f.degree_in(var) >= dg) {
    check_deadline();
    auto fc = coeffs_in(f, var);
    const int df = (int)fc.size() - 1;
    MultiPoly lead = fc.back();
    // f <- lg*f - lead*x^(df-dg)*g
    MultiPoly shift_g(g.vars());
    for (size_t k = 0; k < gc.size(); ++k) {
      for (const auto& [e, c] : gc[k].terms()) {
        Expvec e2 = e;
        e2[var] += (int)k + df - dg;
        shift_g.add_term(e2, c);
      }
    }
    f = f * lg - lead * shift_g;
    ++scaled;
  }
  // degenerate cancellations skip elimination steps; restore the exact
  // lc^(delta+1) normalization the subresultant divisions rely on
  for (; scaled < delta + 1; ++scaled) f = f * lg;
  return f;
}

// Content of f w.r.t. var: gcd of the coefficients in (Z[rest])[var].
MultiPoly content_in(const MultiPoly& f, size_t var) {
  MultiPoly c = MultiPoly::zero(f.vars());
  for (const auto& coeff : coeffs_in(f, var)) {
    if (coeff.is_zero()) continue;
    c = poly_gcd(c, coeff);
    if (c.is_unit()) break;
  }
  return c;
}

}  // namespace

MultiPoly normalize_sign(const MultiPoly& f) {
  if (f.is_zero()) return f;
  return f.leading_coeff() < 0 ? -f : f;
}

std::pair<Int, MultiPoly> content_and_primitive(const MultiPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("content_and_primitive of zero");
  Int c = f.content();
  return {c, f.primitive_part()};
}

MultiPoly poly_gcd(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero()) return normalize_sign(g);
  if (g.is_zero()) return normalize_sign(f);
  if (is_monomial(f) || is_monomial(g)) return monomial_gcd(f, g);

  if (f.is_constant() || g.is_constant()) {
    Int c;
    mpz_gcd(c.get_mpz_t(), f.content().get_mpz_t(), g.content().get_mpz_t());
    return MultiPoly::constant(f.vars(), c);
  }

  // main variable: first with positive degree in either argument
  size_t var = 0;
  while (f.degree_in(var) <= 0 && g.degree_in(var) <= 0) ++var;

  if (f.degree_in(var) <= 0 || g.degree_in(var) <= 0) {
    // one argument is free of var: gcd lies in the var-content
    const MultiPoly& free = f.degree_in(var) <= 0 ? f : g;
    const MultiPoly& other = f.degree_in(var) <= 0 ? g : f;
    return poly_gcd(free, content_in(other, var));
  }

  const MultiPoly cf = content_in(f, var);
  const MultiPoly cg = content_in(g, var);
  const MultiPoly c = poly_gcd(cf, cg);
  MultiPoly a = *f.divided_exact(cf);
  MultiPoly b = *g.divided_exact(cg);
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);

  // subresultant PRS: divide each pseudo-remainder by the predictable
  // factor gpow * hpow^delta to keep coefficient growth polynomial
  const MultiPoly one = MultiPoly::constant(f.vars(), 1);
  MultiPoly gpow = one, hpow = one;
  while (true) {
    check_deadline();
    const int delta = a.degree_in(var) - b.degree_in(var);
    MultiPoly r = pseudo_rem(a, b, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) {
      // coprime in var: gcd of primitive parts is trivial
      return normalize_sign(c);
    }
    a = std::move(b);
    {
      MultiPoly div = gpow;
      for (int i = 0; i < delta; ++i) div = div * hpow;
      b = *r.divided_exact(div);
    }
    // g = lc(a); h = g^delta / h^(delta-1)
    {
      std::vector<MultiPoly> ac = coeffs_in(a, var);
      gpow = ac.back();
    }
    if (delta > 0) {
      MultiPoly num = one;
      for (int i = 0; i < delta; ++i) num = num * gpow;
      MultiPoly den = one;
      for (int i = 0; i + 1 < delta; ++i) den = den * hpow;
      hpow = *num.divided_exact(den);
    }
  }
  b = *b.divided_exact(content_in(b, var));
  return normalize_sign(c * b);
}

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, size_t var) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of zero polynomial");
  const auto fc = coeffs_in(f, var);
  const auto gc = coeffs_in(g, var);
  const int m = (int)fc.size() - 1, n = (int)gc.size() - 1;
  const VarList& vars = f.vars();
  if (m == 0 && n == 0) return MultiPoly::constant(vars, 1);
  if (m == 0) {
    // Res(c, g) = c^deg(g)
    MultiPoly r = MultiPoly::constant(vars, 1);
    for (int i = 0; i < n; ++i) r = r * fc[0];
    return r;
  }
  if (n == 0) {
    MultiPoly r = MultiPoly::constant(vars, 1);
    for (int i = 0; i < m; ++i) r = r * gc[0];
    return r;
  }

  // Sylvester matrix, determinant by fraction-free (Bareiss) elimination.
  const int N = m + n;
  std::vector<std::vector<MultiPoly>> s((size_t)N, std::vector<MultiPoly>((size_t)N, MultiPoly::zero(vars)));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s[(size_t)r][(size_t)(r + k)] = fc[(size_t)(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s[(size_t)(n + r)][(size_t)(r + k)] = gc[(size_t)(n - k)];

  int sign = 1;
  MultiPoly prev = MultiPoly::constant(vars, 1);
  for (int k = 0; k < N - 1; ++k) {
    if (s[(size_t)k][(size_t)k].is_zero()) {
      int piv = -1;
      for (int r = k + 1; r < N; ++r)
        if (!s[(size_t)r][(size_t)k].is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) return MultiPoly::zero(vars);  // singular: resultant 0
      std::swap(s[(size_t)k], s[(size_t)piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        MultiPoly num = s[(size_t)i][(size_t)j] * s[(size_t)k][(size_t)k] -
                        s[(size_t)i][(size_t)k] * s[(size_t)k][(size_t)j];
        s[(size_t)i][(size_t)j] = *num.divided_exact(prev);
      }
      s[(size_t)i][(size_t)k] = MultiPoly::zero(vars);
    }
    prev = s[(size_t)k][(size_t)k];
  }
  MultiPoly det = s[(size_t)(N - 1)][(size_t)(N - 1)];
  return sign < 0 ? -det : det;
}

std::vector<std::pair<MultiPoly, int>> squarefree_decomposition(const MultiPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_decomposition of zero");
  std::vector<std::pair<MultiPoly, int>> out;
  if (f.is_constant()) return out;

  // peel off the part free of the first active variable, recurse on it
  size_t var = 0;
  while (f.degree_in(var) <= 0) ++var;
  MultiPoly cont = content_in(f, var);
  MultiPoly p = *f.divided_exact(cont);

  if (!cont.is_constant()) {
    auto inner = squarefree_decomposition(normalize_sign(cont).primitive_part());
    out = std::move(inner);
  }

  // Yun's algorithm w.r.t. var on p (p has no var-free factors)
  MultiPoly dp = p.derivative(var);
  MultiPoly g = poly_gcd(p, dp);
  MultiPoly c1 = *p.divided_exact(g);
  MultiPoly d1 = *dp.divided_exact(g) - c1.derivative(var);
  int i = 1;
  while (!c1.is_constant()) {
    check_deadline();
    MultiPoly ai = poly_gcd(c1, d1);
    if (!ai.is_constant()) {
      MultiPoly a = ai.primitive_part();
      bool merged = false;
      for (auto& [q, m] : out) {
        if (m == i) {
          q = q * a;
          merged = true;
          break;
        }
      }
      if (!merged) out.emplace_back(a, i);
    }
    MultiPoly c2 = *c1.divided_exact(ai);
    d1 = *d1.divided_exact(ai) - c2.derivative(var);
    c1 = std::move(c2);
    ++i;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first.compare(b.first) < 0;
  });
  return out;
}

MultiPoly square_divisor_part(const MultiPoly& f) {
  MultiPoly s = MultiPoly::constant(f.vars(), 1);
  for (const auto& [a, m] : squarefree_decomposition(f.primitive_part())) {
    for (int k = 0; k < m / 2; ++k) s = s * a;
  }
  return s;
}

bool is_perfect_square(const MultiPoly& f) {
  if (f.is_zero()) return true;
  auto [c, p] = content_and_primitive(f);
  if (!mpz_perfect_square_p(c.get_mpz_t())) return false;
  if (p.leading_coeff() < 0) return false;
  MultiPoly rebuilt = MultiPoly::constant(f.vars(), 1);
  for (const auto& [a, m] : squarefree_decomposition(normalize_sign(p))) {
    if (m % 2 != 0) return false;
    for (int k = 0; k < m; ++k) rebuilt = rebuilt * a;
  }
  // unit check: the decomposition must re-expand to p itself
  return rebuilt == p;
}

}  // namespace conicmin
