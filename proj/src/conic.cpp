#include "conicmin/conic.hpp"

#include "conicmin/deadline.hpp"
#include "conicmin/poly_gcd.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

namespace conicmin {

// ------------------------------------------------------------------ Mat3

Mat3 Mat3::identity(const VarList& vars) {
  Mat3 r = zero(vars);
  for (int i = 0; i < 3; ++i) r.at(i, i) = MultiPoly::constant(vars, 1);
  return r;
}

Mat3 Mat3::zero(const VarList& vars) {
  Mat3 r;
  r.m.fill(MultiPoly::zero(vars));
  return r;
}

Mat3 Mat3::from_columns(const std::array<std::array<MultiPoly, 3>, 3>& cols) {
  Mat3 r;
  for (int c = 0; c < 3; ++c)
    for (int rr = 0; rr < 3; ++rr) r.at(rr, c) = cols[(size_t)c][(size_t)rr];
  return r;
}

Mat3 Mat3::diag(MultiPoly a, MultiPoly b, MultiPoly c) {
  Mat3 r = zero(a.vars());
  r.at(0, 0) = std::move(a);
  r.at(1, 1) = std::move(b);
  r.at(2, 2) = std::move(c);
  return r;
}

Mat3 Mat3::permutation(const VarList& vars, const std::array<int, 3>& perm) {
  // column j is e_{perm[j]}: basis vector j maps to old coordinate perm[j]
  Mat3 r = zero(vars);
  for (int j = 0; j < 3; ++j) r.at(perm[(size_t)j], j) = MultiPoly::constant(vars, 1);
  return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r = zero(m[0].vars());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      MultiPoly acc = MultiPoly::zero(m[0].vars());
      for (int k = 0; k < 3; ++k) acc += at(i, k) * o.at(k, j);
      r.at(i, j) = std::move(acc);
    }
  return r;
}

Mat3 Mat3::transpose() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.at(j, i) = at(i, j);
  return r;
}

MultiPoly Mat3::det() const {
  return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
         at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
         at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

Mat3 Mat3::adjugate() const {
  Mat3 r = zero(m[0].vars());
  auto cof = [&](int i, int j) {
    int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
    return at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
  };
  // adj = transpose of cofactor matrix; with cyclic complements no sign
  // bookkeeping is needed
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.at(j, i) = cof(i, j);
  return r;
}

// ----------------------------------------------------------------- Conic

Conic::Conic(VarList vars, std::array<MultiPoly, 6> coeffs)
    : vars_(std::move(vars)), c_(std::move(coeffs)) {
  for (const auto& p : c_)
    if (p.vars() != vars_) throw ConicError("conic coefficients over mixed variable lists");
  bool all_zero = true;
  for (const auto& p : c_) all_zero = all_zero && p.is_zero();
  if (all_zero) throw ConicError("conic with all coefficients zero");
  delta_ = doubled_gram().det();
  if (delta_.is_zero()) throw ConicError("degenerate conic: discriminant vanishes");
}

Conic Conic::diagonal(const VarList& vars, MultiPoly a, MultiPoly b, MultiPoly c) {
  MultiPoly z = MultiPoly::zero(vars);
  return Conic(vars, {std::move(a), std::move(b), std::move(c), z, z, z});
}

Mat3 Conic::doubled_gram() const {
  Mat3 g = Mat3::zero(vars_);
  g.at(0, 0) = c_[0] * 2;
  g.at(1, 1) = c_[1] * 2;
  g.at(2, 2) = c_[2] * 2;
  g.at(0, 1) = g.at(1, 0) = c_[3];
  g.at(0, 2) = g.at(2, 0) = c_[4];
  g.at(1, 2) = g.at(2, 1) = c_[5];
  return g;
}

MultiPoly Conic::eval(const MultiPoly& x, const MultiPoly& y, const MultiPoly& z) const {
  return c_[0] * x * x + c_[1] * y * y + c_[2] * z * z + c_[3] * x * y + c_[4] * x * z +
         c_[5] * y * z;
}

std::string Conic::str() const {
  std::string s = "[";
  for (size_t i = 0; i < 6; ++i) {
    if (i) s += " | ";
    s += c_[i].str();
  }
  s += "]";
  return s;
}

// ------------------------------------------------------------------- log

void TransformLog::append(const TransformLog& other) {
  for (const auto& s : other.steps()) steps_.push_back(s);
}

std::string conic_digest(const Conic& L) {
  uint64_t h = 1469598103934665603ULL;  // FNV-1a
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& v : L.vars()) mix(v + ",");
  mix(L.str());
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

Conic transform(const Conic& L, const Mat3& u, const RationalFunction& scalar) {
  if (scalar.is_zero()) throw ConicError("transform with zero scalar");
  Mat3 m = L.doubled_gram();
  Mat3 n = u.transpose() * m * u;
  const MultiPoly& num = scalar.num();
  const MultiPoly& den = scalar.den();
  auto scale_entry = [&](const MultiPoly& p) {
    auto q = (p * num).divided_exact(den);
    if (!q) throw ConicError("transform result is not integral");
    return *q;
  };
  const MultiPoly two = MultiPoly::constant(L.vars(), 2);
  auto halve = [&](const MultiPoly& p) {
    auto q = p.divided_exact(two);
    if (!q) throw ConicError("transform result is not integral (odd diagonal)");
    return *q;
  };
  std::array<MultiPoly, 6> c{
      halve(scale_entry(n.at(0, 0))), halve(scale_entry(n.at(1, 1))),
      halve(scale_entry(n.at(2, 2))), scale_entry(n.at(0, 1)),
      scale_entry(n.at(0, 2)),        scale_entry(n.at(1, 2))};
  return Conic(L.vars(), std::move(c));  // constructor rejects singular results
}

Conic raw_patch_swap(const Conic& L, int var_index) {
  if (L.vars().size() != 2) throw ConicError("patch swap needs a two-variable ring");
  if (var_index != 0 && var_index != 1) throw ConicError("patch swap variable index");
  int d = 0;
  for (const auto& p : L.coeffs()) d = std::max(d, p.total_degree());
  std::array<MultiPoly, 6> out;
  for (size_t i = 0; i < 6; ++i) {
    MultiPoly r(L.vars());
    for (const auto& [e, c] : L.coeffs()[i].terms()) {
      Expvec e2 = e;
      e2[(size_t)var_index] = d - e[0] - e[1];
      r.add_term(e2, c);
    }
    out[i] = std::move(r);
  }
  return Conic(L.vars(), std::move(out));
}

TransformStep make_transform_step(std::string label, Mat3 u, RationalFunction scalar,
                                  const Conic& result) {
  TransformStep s;
  s.kind = StepKind::Transform;
  s.label = std::move(label);
  s.u = std::move(u);
  s.scalar = std::move(scalar);
  s.digest = conic_digest(result);
  return s;
}

TransformStep make_patch_swap_step(int var_index, const Conic& result) {
  TransformStep s;
  s.kind = StepKind::PatchSwap;
  s.label = "patch_swap t" + std::to_string(var_index + 1);
  s.u = Mat3::identity(result.vars());
  s.scalar = RationalFunction::one(result.vars());
  s.patch_var = var_index;
  s.digest = conic_digest(result);
  return s;
}

Conic apply_step(const Conic& L, const TransformStep& s) {
  switch (s.kind) {
    case StepKind::Transform:
      return transform(L, s.u, s.scalar);
    case StepKind::PatchSwap:
      return raw_patch_swap(L, s.patch_var);
  }
  throw ConicError("unknown step kind");
}

// ------------------------------------------------------------ statistics

DeltaSplit delta_split(const Conic& L) {
  DeltaSplit out;
  out.delta = L.delta();
  auto [c, prim] = content_and_primitive(out.delta);
  out.content = c;
  out.odd_content = c;
  while (out.odd_content % 2 == 0) out.odd_content /= 2;
  out.sign = prim.leading_coeff() < 0 ? -1 : 1;
  out.delta1 = MultiPoly::constant(L.vars(), 1);
  out.delta2 = MultiPoly::constant(L.vars(), 1);
  for (const auto& [a, m] : squarefree_decomposition(normalize_sign(prim))) {
    if (m == 1) {
      out.delta1 = out.delta1 * a;
    } else {
      for (int k = 0; k < m; ++k) out.delta2 = out.delta2 * a;
    }
  }
  return out;
}

DeltaParts delta_parts(const Conic& L, FactorBudget& budget) {
  DeltaParts out{delta_split(L), {}};
  out.factors = factor_bivariate(out.split.delta2, budget);
  return out;
}

DeltaParts delta_parts(const Conic& L) {
  FactorBudget b;
  return delta_parts(L, b);
}

DegreeStats degree_stats(const Conic& L) {
  auto s = delta_split(L);
  int diag = 0;
  for (size_t i = 0; i < 3; ++i) diag += std::max(L.coeffs()[i].total_degree(), 0);
  return DegreeStats{diag, s.delta2.total_degree() + diag - L.delta().total_degree()};
}

std::vector<PermutedConic> best_permutation(const Conic& L) {
  std::vector<PermutedConic> out;
  std::array<int, 3> perm{0, 1, 2};
  std::array<int, 3> degs{L.a().total_degree(), L.b().total_degree(), L.c().total_degree()};
  std::sort(perm.begin(), perm.end());
  do {
    if (degs[(size_t)perm[0]] <= degs[(size_t)perm[1]] &&
        degs[(size_t)perm[1]] <= degs[(size_t)perm[2]]) {
      Mat3 p = Mat3::permutation(L.vars(), perm);
      out.push_back(PermutedConic{transform(L, p, RationalFunction::one(L.vars())), perm, p});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// ------------------------------------------------------- scale minimise

namespace {

// Largest s (one gcd exponent per prime) with s^2 | diag and s | cross1,
// s | cross2, combining the integer and polynomial parts.
MultiPoly rule_ii_divisor(const MultiPoly& diag, const MultiPoly& cross1,
                          const MultiPoly& cross2) {
  if (diag.is_zero()) return poly_gcd(cross1, cross2);
  auto [ca, pa] = content_and_primitive(diag);
  // polynomial part; the squarefree split of the diagonal entry is only
  // needed when the crosses share a nonconstant factor (zero crosses
  // are divisible by anything)
  MultiPoly c12 = poly_gcd(cross1, cross2);
  MultiPoly dp;
  if (c12.is_zero())
    dp = square_divisor_part(pa);
  else if (c12.is_constant())
    dp = MultiPoly::constant(diag.vars(), 1);
  else
    dp = poly_gcd(square_divisor_part(pa), c12).primitive_part();
  // integer part
  Int di = 1;
  Int cc = ca;
  Int c1 = cross1.is_zero() ? Int(0) : cross1.content();
  Int c2 = cross2.is_zero() ? Int(0) : cross2.content();
  Int g;
  mpz_gcd(g.get_mpz_t(), cc.get_mpz_t(), c1.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c2.get_mpz_t());
  if (g > 1) {
    try {
      for (const auto& [p, e] : factor_integer(g)) {
        int va = 0;
        Int t = cc;
        while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
          t /= p;
          ++va;
        }
        int k = va / 2;
        if (c1 != 0) k = std::min(k, [&] {
          int v = 0;
          Int u = c1;
          while (mpz_divisible_p(u.get_mpz_t(), p.get_mpz_t())) {
            u /= p;
            ++v;
          }
          return v;
        }());
        if (c2 != 0) k = std::min(k, [&] {
          int v = 0;
          Int u = c2;
          while (mpz_divisible_p(u.get_mpz_t(), p.get_mpz_t())) {
            u /= p;
            ++v;
          }
          return v;
        }());
        for (int i = 0; i < k; ++i) di *= p;
      }
    } catch (const FactorBudgetError&) {
      // leave stubborn integer parts alone
    }
  }
  return dp * di;
}

}  // namespace

std::pair<Conic, TransformLog> scale_minimise(const Conic& L) {
  Conic cur = L;
  TransformLog log;
  const VarList& vars = L.vars();
  const RationalFunction one = RationalFunction::one(vars);

  bool changed = true;
  while (changed) {
    check_deadline();
    changed = false;

    // (i) divide out the gcd of all six coefficients
    MultiPoly g = MultiPoly::zero(vars);
    for (const auto& p : cur.coeffs()) g = poly_gcd(g, p);
    if (!g.is_unit()) {
      Conic next = transform(cur, Mat3::identity(vars),
                             RationalFunction(MultiPoly::constant(vars, 1), g));
      log.append(make_transform_step("scale content /(" + g.str() + ")",
                                     Mat3::identity(vars),
                                     RationalFunction(MultiPoly::constant(vars, 1), g), next));
      cur = next;
      changed = true;
    }

    // (ii) variable division: pi^2 | diag, pi | both crosses of that variable
    struct RuleII {
      int diag, cross1, cross2, var;
    };
    for (const RuleII r : {RuleII{0, 3, 4, 0}, RuleII{1, 3, 5, 1}, RuleII{2, 4, 5, 2}}) {
      MultiPoly d = rule_ii_divisor(cur.coeffs()[(size_t)r.diag], cur.coeffs()[(size_t)r.cross1],
                                    cur.coeffs()[(size_t)r.cross2]);
      if (d.is_unit() || d.is_zero()) continue;
      std::array<MultiPoly, 3> diag_entries{MultiPoly::constant(vars, 1),
                                            MultiPoly::constant(vars, 1),
                                            MultiPoly::constant(vars, 1)};
      for (int i = 0; i < 3; ++i)
        if (i != r.var) diag_entries[(size_t)i] = d;
      Mat3 u = Mat3::diag(diag_entries[0], diag_entries[1], diag_entries[2]);
      RationalFunction sc(MultiPoly::constant(vars, 1), d * d);
      Conic next = transform(cur, u, sc);
      static const char* names[3] = {"X", "Y", "Z"};
      log.append(make_transform_step(std::string("scale var ") + names[r.var] + " /(" +
                                         d.str() + ")",
                                     u, sc, next));
      cur = next;
      changed = true;
    }

    // (iii) pair scaling: pi | two diagonals and their cross term
    struct RuleIII {
      int d1, d2, cross, other;
    };
    for (const RuleIII r :
         {RuleIII{0, 1, 3, 2}, RuleIII{0, 2, 4, 1}, RuleIII{1, 2, 5, 0}}) {
      MultiPoly d = poly_gcd(poly_gcd(cur.coeffs()[(size_t)r.d1], cur.coeffs()[(size_t)r.d2]),
                             cur.coeffs()[(size_t)r.cross]);
      if (d.is_unit() || d.is_zero()) continue;
      std::array<MultiPoly, 3> diag_entries{MultiPoly::constant(vars, 1),
                                            MultiPoly::constant(vars, 1),
                                            MultiPoly::constant(vars, 1)};
      diag_entries[(size_t)r.other] = d;
      Mat3 u = Mat3::diag(diag_entries[0], diag_entries[1], diag_entries[2]);
      RationalFunction sc(MultiPoly::constant(vars, 1), d);
      Conic next = transform(cur, u, sc);
      static const char* names[3] = {"X", "Y", "Z"};
      log.append(make_transform_step(std::string("scale pair, ") + names[r.other] +
                                         " *(" + d.str() + ")",
                                     u, sc, next));
      cur = next;
      changed = true;
    }
  }
  return {std::move(cur), std::move(log)};
}

std::pair<Conic, TransformLog> swap_affine_patch(const Conic& L, int var_index) {
  TransformLog log;
  Conic swapped = raw_patch_swap(L, var_index);
  log.append(make_patch_swap_step(var_index, swapped));
  auto [minimal, sublog] = scale_minimise(swapped);
  log.append(sublog);
  return {std::move(minimal), std::move(log)};
}

// --------------------------------------------------------- diagonalise

DiagonalForm diagonalise(const Conic& L) {
  const VarList& vars = L.vars();
  const RationalFunction one = RationalFunction::one(vars);
  Conic cur = L;
  TransformLog log;

  auto apply = [&](const std::string& label, const Mat3& u) {
    Conic next = transform(cur, u, one);
    log.append(make_transform_step(label, u, one, next));
    cur = next;
  };

  // pivot into a != 0
  if (cur.a().is_zero()) {
    if (!cur.b().is_zero()) {
      apply("diag pivot X<->Y", Mat3::permutation(vars, {1, 0, 2}));
    } else if (!cur.c().is_zero()) {
      apply("diag pivot X<->Z", Mat3::permutation(vars, {2, 1, 0}));
    } else {
      // all diagonal entries vanish; d != 0 since delta = 2def != 0
      Mat3 u = Mat3::identity(vars);
      u.at(1, 0) = MultiPoly::constant(vars, 1);  // X-image = e1 + e2
      apply("diag shear X += Y", u);
    }
  }

  // clear d and e with the 2a-scaled shear
  if (!cur.d().is_zero() || !cur.e().is_zero()) {
    MultiPoly a2 = cur.a() * 2;
    Mat3 u = Mat3::diag(a2, a2, a2);
    u.at(0, 1) = -cur.d();
    u.at(0, 2) = -cur.e();
    apply("diag clear XY, XZ", u);
  }

  // pivot into b != 0 on the (Y, Z) block
  if (cur.b().is_zero()) {
    if (!cur.c().is_zero()) {
      apply("diag pivot Y<->Z", Mat3::permutation(vars, {0, 2, 1}));
    } else {
      Mat3 u = Mat3::identity(vars);
      u.at(2, 1) = MultiPoly::constant(vars, 1);  // Y-image = e2 + e3
      apply("diag shear Y += Z", u);
    }
  }

  if (!cur.f().is_zero()) {
    MultiPoly b2 = cur.b() * 2;
    Mat3 u = Mat3::diag(MultiPoly::constant(vars, 1), b2, b2);
    u.at(1, 2) = -cur.f();
    apply("diag clear YZ", u);
  }

  DiagonalForm out{RationalFunction(cur.a()), RationalFunction(cur.b()),
                   RationalFunction(cur.c()), cur, log};
  return out;
}

// ------------------------------------------------------ norm certificate

bool norm_certificate_check(const RationalFunction& f, const Int& D, const MultiPoly& lambda,
                            const RationalFunction& a, const RationalFunction& b) {
  if (f.is_zero()) throw std::invalid_argument("norm_certificate_check: f = 0");
  const VarList& vars = f.vars();
  RationalFunction dl(MultiPoly::constant(vars, D) * lambda.with_vars(vars));
  RationalFunction r = (a * a - dl * b * b) / f;
  if (r.is_zero()) return false;
  return is_perfect_square(r.num()) && is_perfect_square(r.den());
}

std::optional<std::pair<MultiPoly, MultiPoly>> find_norm_certificate(
    const RationalFunction& f, const Int& D, const MultiPoly& lambda, int max_deg,
    int max_coeff) {
  const VarList& vars = f.vars();
  // enumerate all monomials of total degree <= max_deg
  std::vector<Expvec> mons;
  Expvec e(vars.size(), 0);
  std::function<void(size_t, int)> gen = [&](size_t i, int left) {
    if (i == vars.size()) {
      mons.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      gen(i + 1, left - k);
    }
    e[i] = 0;
  };
  gen(0, max_deg);

  std::vector<MultiPoly> candidates;
  std::vector<int> coef(mons.size(), -max_coeff);
  while (true) {
    MultiPoly p(vars);
    for (size_t i = 0; i < mons.size(); ++i)
      if (coef[i] != 0) p.add_term(mons[i], coef[i]);
    candidates.push_back(std::move(p));
    size_t i = 0;
    while (i < coef.size() && coef[i] == max_coeff) coef[i++] = -max_coeff;
    if (i == coef.size()) break;
    ++coef[i];
  }
  for (const auto& a : candidates) {
    for (const auto& b : candidates) {
      if (a.is_zero() && b.is_zero()) continue;
      if (norm_certificate_check(f, D, lambda, RationalFunction(a), RationalFunction(b)))
        return std::pair{a, b};
    }
  }
  return std::nullopt;
}

}  // namespace conicmin
