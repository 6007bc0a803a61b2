// Integer, univariate and bivariate factorization over the rationals.
//
// Univariate: Zassenhaus — monic transform, factorization modulo a good
// prime, quadratic Hensel lifting past the Mignotte bound, subset
// recombination.  Bivariate: evaluation at a good point, univariate
// factorization of the fibre, Hensel lifting in the (y-a)-adic series
// ring over Q, subset recombination with the leading-coefficient trick.
#include "conicmin/factor.hpp"

#include "conicmin/deadline.hpp"
#include "conicmin/poly_gcd.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

namespace conicmin {

namespace {

// ---------------------------------------------------------------- budget

constexpr long long kRhoStepCost = 1;
constexpr long long kSubsetCost = 20;

// ------------------------------------------------------------- integers

bool small_trial_division(Int& n, std::vector<std::pair<Int, int>>& out) {
  auto strip = [&](const Int& p) {
    int e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  };
  strip(2);
  strip(3);
  for (Int d = 5; d * d <= n && d < 100000; d += (mpz_fdiv_ui(d.get_mpz_t(), 6) == 5 ? 2 : 4))
    strip(d);
  if (n > 1 && n < Int(100000) * Int(100000)) {
    out.emplace_back(n, 1);
    n = 1;
  }
  return n == 1;
}

Int pollard_brent(const Int& n, unsigned long c, long long max_iters, long long& spent) {
  // Brent's cycle-finding variant of Pollard rho with batched gcds.
  Int x(2), y, d(1), q(1), ys;
  long long r = 1;
  const long long m = 128;
  while (d == 1 && spent < max_iters) {
    y = x;
    for (long long i = 0; i < r; ++i) x = (x * x + c) % n;
    long long k = 0;
    while (k < r && d == 1) {
      ys = x;
      const long long lim = std::min(m, r - k);
      for (long long i = 0; i < lim; ++i) {
        x = (x * x + c) % n;
        Int diff = x > y ? x - y : y - x;
        q = q * diff % n;
      }
      spent += lim;
      mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += lim;
    }
    r *= 2;
  }
  if (d == n) {
    // backtrack
    do {
      ys = (ys * ys + c) % n;
      Int diff = ys > y ? ys - y : y - ys;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (d == 1);
  }
  return d;
}

void factor_integer_rec(Int n, std::vector<std::pair<Int, int>>& out, int mult,
                        FactorBudget& budget, const MultiPoly& context) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.emplace_back(n, mult);
    return;
  }
  if (mpz_perfect_power_p(n.get_mpz_t()) != 0) {
    for (unsigned long e = 2; e <= mpz_sizeinbase(n.get_mpz_t(), 2); ++e) {
      Int root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e)) {
        factor_integer_rec(root, out, mult * (int)e, budget, context);
        return;
      }
    }
  }
  for (unsigned long c = 1; c < 32; ++c) {
    long long spent = 0;
    Int d = pollard_brent(n, c, 4'000'000, spent);
    budget.spend(spent * kRhoStepCost, context);
    if (d > 1 && d < n) {
      factor_integer_rec(d, out, mult, budget, context);
      factor_integer_rec(n / d, out, mult, budget, context);
      return;
    }
  }
  throw FactorBudgetError("integer factorization budget exceeded: unfactored cofactor " +
                              n.get_str(),
                          context);
}

// --------------------------------------------------- dense Z polynomials

using ZPoly = std::vector<Int>;  // little-endian, normalized

void znorm(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
int zdeg(const ZPoly& f) { return (int)f.size() - 1; }

// Exact division of f by monic-or-divisible g; nullopt if not exact.
std::optional<ZPoly> zdiv_exact(ZPoly f, const ZPoly& g) {
  znorm(f);
  if (g.empty()) return std::nullopt;
  if (f.empty()) return ZPoly{};
  if (f.size() < g.size()) return std::nullopt;
  ZPoly q(f.size() - g.size() + 1, Int(0));
  for (int k = (int)q.size() - 1; k >= 0; --k) {
    Int& lead = f[(size_t)k + g.size() - 1];
    if (lead == 0) continue;
    Int c = lead / g.back();
    if (c * g.back() != lead) return std::nullopt;
    q[(size_t)k] = c;
    for (size_t i = 0; i < g.size(); ++i) f[(size_t)k + i] -= c * g[i];
  }
  for (const Int& c : f)
    if (c != 0) return std::nullopt;
  return q;
}

Int zcontent(const ZPoly& f) {
  Int g = 0;
  for (const Int& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

// ------------------------------------------------------ F_p polynomials

struct Fp {
  uint64_t p;
  uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p; }
  uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b) % p; }
  uint64_t mul(uint64_t a, uint64_t b) const {
    return (uint64_t)((__uint128_t)a * b % p);
  }
  uint64_t pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  uint64_t inv(uint64_t a) const { return pow(a % p, p - 2); }
};

using FPoly = std::vector<uint64_t>;  // little-endian, normalized

void fnorm(FPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FPoly fmul(const Fp& F, const FPoly& a, const FPoly& b) {
  if (a.empty() || b.empty()) return {};
  FPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (uint64_t)(((__uint128_t)a[i] * b[j] + r[i + j]) % F.p);
  }
  return r;
}

FPoly frem(const Fp& F, FPoly a, const FPoly& b) {
  fnorm(a);
  const uint64_t binv = F.inv(b.back());
  while (a.size() >= b.size()) {
    uint64_t c = F.mul(a.back(), binv);
    if (c) {
      size_t off = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) a[off + i] = F.sub(a[off + i], F.mul(c, b[i]));
    }
    a.pop_back();
    fnorm(a);
    if (a.empty()) break;
  }
  return a;
}

FPoly fgcd(const Fp& F, FPoly a, FPoly b) {
  fnorm(a);
  fnorm(b);
  while (!b.empty()) {
    FPoly r = frem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    uint64_t inv = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, inv);
  }
  return a;
}

FPoly fderiv(const Fp& F, const FPoly& f) {
  FPoly r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(F.mul(f[i], i % F.p));
  fnorm(r);
  return r;
}

FPoly fpowmod(const Fp& F, FPoly base, const Int& e, const FPoly& mod) {
  FPoly r{1};
  base = frem(F, std::move(base), mod);
  const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = frem(F, fmul(F, r, r), mod);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = frem(F, fmul(F, r, base), mod);
  }
  return r;
}

// exact division a / b in F_p[x]
FPoly fdiv_exact(const Fp& F, FPoly a, const FPoly& b) {
  FPoly q(a.size() - b.size() + 1, 0);
  const uint64_t binv = F.inv(b.back());
  for (int k = (int)q.size() - 1; k >= 0; --k) {
    uint64_t c = F.mul(a[(size_t)k + b.size() - 1], binv);
    q[(size_t)k] = c;
    if (c)
      for (size_t i = 0; i < b.size(); ++i)
        a[(size_t)k + i] = F.sub(a[(size_t)k + i], F.mul(c, b[i]));
  }
  fnorm(q);
  return q;
}

// Distinct-degree then Cantor-Zassenhaus equal-degree splitting.
// f monic squarefree over F_p, p odd.  Deterministically seeded.
std::vector<FPoly> fp_factor_squarefree(const Fp& F, const FPoly& f, std::mt19937_64& rng) {
  std::vector<FPoly> out;
  std::vector<std::pair<FPoly, int>> stage;  // (product of irreducibles of degree d, d)
  FPoly rest = f;
  FPoly h{0, 1};  // x
  int d = 0;
  while ((int)rest.size() - 1 > 0) {
    ++d;
    if (2 * d > (int)rest.size() - 1) {
      stage.emplace_back(rest, (int)rest.size() - 1);
      break;
    }
    h = fpowmod(F, h, Int(F.p), rest);
    FPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = F.sub(hx[1], 1);
    fnorm(hx);
    FPoly g = fgcd(F, rest, hx);
    if (!g.empty() && (int)g.size() - 1 > 0) {
      stage.emplace_back(g, d);
      rest = fdiv_exact(F, rest, g);
      h = frem(F, h, rest);
    }
  }
  // equal-degree split
  for (auto& [prod, deg] : stage) {
    std::vector<FPoly> work{prod};
    while (!work.empty()) {
      FPoly g = work.back();
      work.pop_back();
      const int dg = (int)g.size() - 1;
      if (dg == deg) {
        out.push_back(g);
        continue;
      }
      Int e;
      mpz_ui_pow_ui(e.get_mpz_t(), (unsigned long)F.p, (unsigned long)deg);
      e = (e - 1) / 2;
      while (true) {
        FPoly r((size_t)dg, 0);
        for (auto& c : r) c = rng() % F.p;
        fnorm(r);
        if (r.empty()) continue;
        FPoly b = fpowmod(F, r, e, g);
        if (b.empty()) continue;
        if (b.empty()) b.resize(1, 0);
        b[0] = F.sub(b[0], 1);
        fnorm(b);
        FPoly s = fgcd(F, g, b);
        if (!s.empty() && (int)s.size() - 1 > 0 && s.size() < g.size()) {
          work.push_back(s);
          work.push_back(fdiv_exact(F, g, s));
          break;
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --------------------------------------------- Hensel lifting over Z/p^k

struct ZMod {
  Int m;
  Int norm(Int a) const {
    a %= m;
    if (a < 0) a += m;
    return a;
  }
  Int balance(Int a) const {
    a = norm(std::move(a));
    if (a * 2 > m) a -= m;
    return a;
  }
};

using MPoly1 = std::vector<Int>;

MPoly1 mnorm(const ZMod& R, MPoly1 f) {
  for (auto& c : f) c = R.norm(c);
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

MPoly1 mmul(const ZMod& R, const MPoly1& a, const MPoly1& b) {
  if (a.empty() || b.empty()) return {};
  MPoly1 r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % R.m;
  }
  return mnorm(R, std::move(r));
}

MPoly1 madd(const ZMod& R, MPoly1 a, const MPoly1& b) {
  if (a.size() < b.size()) a.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return mnorm(R, std::move(a));
}

MPoly1 msub(const ZMod& R, MPoly1 a, const MPoly1& b) {
  if (a.size() < b.size()) a.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return mnorm(R, std::move(a));
}

// divmod by monic h
std::pair<MPoly1, MPoly1> mdivmod(const ZMod& R, MPoly1 f, const MPoly1& h) {
  if (f.size() < h.size()) return {MPoly1{}, std::move(f)};
  MPoly1 q(f.size() - h.size() + 1, Int(0));
  for (int k = (int)q.size() - 1; k >= 0; --k) {
    Int c = R.norm(f[(size_t)k + h.size() - 1]);
    q[(size_t)k] = c;
    if (c != 0)
      for (size_t i = 0; i < h.size(); ++i)
        f[(size_t)k + i] = (f[(size_t)k + i] - c * h[i]) % R.m;
  }
  f.resize(h.size() - 1);
  return {mnorm(R, std::move(q)), mnorm(R, std::move(f))};
}

// One quadratic Hensel step: f = g*h (mod m) with Bezout s*g + t*h = 1
// (mod m), g and h monic; lifts everything to mod m^2.
void hensel_step(const Int& m, const MPoly1& f, MPoly1& g, MPoly1& h, MPoly1& s, MPoly1& t) {
  ZMod R{m * m};
  MPoly1 e = msub(R, f, mmul(R, g, h));
  auto [q, r] = mdivmod(R, mmul(R, s, e), h);
  g = madd(R, madd(R, g, mmul(R, t, e)), mmul(R, q, g));
  h = madd(R, h, r);
  MPoly1 b = msub(R, madd(R, mmul(R, s, g), mmul(R, t, h)), MPoly1{Int(1)});
  auto [c, d] = mdivmod(R, mmul(R, s, b), h);
  s = msub(R, s, d);
  t = msub(R, msub(R, t, mmul(R, t, b)), mmul(R, c, g));
}

// Lift a monic factorization f = prod fac[i] (mod p) to mod p^2^ceil(...)
// >= bound; returns the attained modulus.
Int hensel_lift_list(const Int& p, const MPoly1& f, std::vector<MPoly1>& fac, const Int& bound) {
  if (fac.size() == 1) {
    Int m = p;
    while (m < bound) m *= m;
    fac[0] = f;
    for (auto& c : fac[0]) c = ((c % m) + m) % m;
    return m;
  }
  // split list in two, lift the pair, recurse
  size_t half = fac.size() / 2;
  std::vector<MPoly1> left(fac.begin(), fac.begin() + (long)half);
  std::vector<MPoly1> right(fac.begin() + (long)half, fac.end());
  ZMod Rp{p};
  auto prod_mod = [&](const std::vector<MPoly1>& v) {
    MPoly1 r{Int(1)};
    for (const auto& x : v) r = mmul(Rp, r, x);
    return r;
  };
  MPoly1 g = prod_mod(left), h = prod_mod(right);
  // Bezout over F_p via extended Euclid
  Fp F{(uint64_t)p.get_ui()};
  auto toF = [&](const MPoly1& a) {
    FPoly r;
    for (const auto& c : a) r.push_back(mpz_fdiv_ui(c.get_mpz_t(), F.p));
    fnorm(r);
    return r;
  };
  FPoly fa = toF(g), fb = toF(h);
  // extended euclid
  FPoly r0 = fa, r1 = fb, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    // q = r0 div r1
    FPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
    FPoly rr = r0;
    if (!q.empty()) {
      const uint64_t inv = F.inv(r1.back());
      for (int k = (int)q.size() - 1; k >= 0; --k) {
        uint64_t c = F.mul(k + r1.size() - 1 < rr.size() ? rr[(size_t)k + r1.size() - 1] : 0, inv);
        q[(size_t)k] = c;
        if (c)
          for (size_t i = 0; i < r1.size(); ++i)
            if ((size_t)k + i < rr.size()) rr[(size_t)k + i] = F.sub(rr[(size_t)k + i], F.mul(c, r1[i]));
      }
      fnorm(rr);
    }
    auto combine = [&](const FPoly& a0, const FPoly& a1) {
      FPoly t = fmul(F, q, a1);
      FPoly res = a0;
      if (res.size() < t.size()) res.resize(t.size(), 0);
      for (size_t i = 0; i < t.size(); ++i) res[i] = F.sub(res[i], t[i]);
      fnorm(res);
      return res;
    };
    FPoly s2 = combine(s0, s1), t2 = combine(t0, t1);
    r0 = std::move(r1);
    r1 = std::move(rr);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 = gcd (a unit); scale Bezout
  const uint64_t unit_inv = F.inv(r0.empty() ? 1 : r0[0]);
  auto fromF = [&](const FPoly& a) {
    MPoly1 r;
    for (uint64_t c : a) r.emplace_back(F.mul(c, unit_inv));
    return r;
  };
  MPoly1 s = fromF(s0), t = fromF(t0);

  Int m = p;
  MPoly1 fg = g, fh = h;
  while (m < bound) {
    hensel_step(m, f, fg, fh, s, t);
    m *= m;
  }
  Int lm = hensel_lift_list(p, fg, left, bound);
  Int rm = hensel_lift_list(p, fh, right, bound);
  (void)lm;
  (void)rm;
  fac.clear();
  fac.insert(fac.end(), left.begin(), left.end());
  fac.insert(fac.end(), right.begin(), right.end());
  return m;
}

}  // namespace

// ------------------------------------------------------------ public API

void FactorBudget::spend(long long n, const MultiPoly& at) {
  check_deadline();
  units -= n;
  if (units < 0)
    throw FactorBudgetError("factorization budget exceeded", at);
}

bool is_probable_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

std::vector<std::pair<Int, int>> factor_integer(const Int& n, FactorBudget& budget) {
  if (n == 0) throw std::invalid_argument("factor_integer(0)");
  Int m = abs(n);
  std::vector<std::pair<Int, int>> out;
  if (m == 1) return out;
  if (!small_trial_division(m, out))
    factor_integer_rec(m, out, 1, budget, MultiPoly());
  // merge duplicates (rho may split a prime power)
  std::sort(out.begin(), out.end());
  std::vector<std::pair<Int, int>> merged;
  for (auto& pe : out) {
    if (!merged.empty() && merged.back().first == pe.first)
      merged.back().second += pe.second;
    else
      merged.push_back(pe);
  }
  return merged;
}

std::vector<std::pair<Int, int>> factor_integer(const Int& n) {
  FactorBudget b;
  return factor_integer(n, b);
}

MultiPoly Factorization::expand(const VarList& vars) const {
  MultiPoly r = MultiPoly::constant(vars, unit);
  for (const auto& [p, e] : content_factors)
    for (int i = 0; i < e; ++i) r = r * p;
  for (const auto& [f, e] : poly_factors)
    for (int i = 0; i < e; ++i) r = r * f.with_vars(vars);
  return r;
}

namespace {

void sort_poly_factors(std::vector<std::pair<MultiPoly, int>>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    const int da = a.first.total_degree(), db = b.first.total_degree();
    if (da != db) return da < db;
    return a.first.compare(b.first) < 0;
  });
}

// Factor a primitive squarefree univariate (dense) polynomial over Q
// into primitive irreducible factors with positive leading coefficient.
std::vector<ZPoly> factor_squarefree_dense(const ZPoly& f_in, FactorBudget& budget,
                                           const MultiPoly& context) {
  ZPoly f = f_in;
  znorm(f);
  const int n = zdeg(f);
  if (n <= 0) return {};
  if (n == 1) {
    ZPoly g = f;
    if (g.back() < 0)
      for (auto& c : g) c = -c;
    return {g};
  }
  // monic transform F(x) = b^(n-1) f(x/b): F_i = f_i b^(n-1-i), F_n = 1
  const Int b = f.back();
  ZPoly F(f.size());
  {
    F[(size_t)n] = 1;
    Int pw = 1;
    for (int i = n - 1; i >= 0; --i) {
      F[(size_t)i] = f[(size_t)i] * pw;
      pw *= b;
    }
  }
  // choose a prime p: F mod p squarefree
  Fp Fsmall{0};
  Int p = 101;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  while (true) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    Fp Ftry{p.get_ui()};
    FPoly fp;
    for (const auto& c : F) fp.push_back(mpz_fdiv_ui(c.get_mpz_t(), Ftry.p));
    fnorm(fp);
    if ((int)fp.size() - 1 != n) continue;  // cannot happen (monic) but keep safe
    FPoly d = fderiv(Ftry, fp);
    if (d.empty()) continue;
    if ((int)fgcd(Ftry, fp, d).size() - 1 == 0) {
      Fsmall = Ftry;
      break;
    }
  }
  FPoly fp;
  for (const auto& c : F) fp.push_back(mpz_fdiv_ui(c.get_mpz_t(), Fsmall.p));
  auto facs_p = fp_factor_squarefree(Fsmall, fp, rng);
  if (facs_p.size() == 1) {
    ZPoly g = f;
    Int c = zcontent(g);
    if (g.back() < 0) c = -c;
    if (c != 1)
      for (auto& x : g) x /= c;
    return {g};
  }

  // Mignotte bound for monic F: |coeffs of any factor| <= 2^n * ||F||_2
  Int norm2 = 0;
  for (const auto& c : F) norm2 += c * c;
  Int bound = sqrt(norm2) + 1;
  bound <<= (unsigned)(n + 1);
  bound = bound * 2 + 1;

  std::vector<MPoly1> lifted;
  for (const auto& g : facs_p) {
    MPoly1 m;
    for (uint64_t c : g) m.emplace_back(c);
    lifted.push_back(std::move(m));
  }
  MPoly1 Fm;
  for (const auto& c : F) Fm.push_back(c);
  Int pk = hensel_lift_list(p, Fm, lifted, bound);
  ZMod R{pk};

  // subset recombination over the monic factorization of F
  std::vector<ZPoly> out_monic;
  std::vector<size_t> active(lifted.size());
  for (size_t i = 0; i < active.size(); ++i) active[i] = i;
  ZPoly Fleft = F;

  auto try_subset = [&](const std::vector<size_t>& subset) -> bool {
    budget.spend(kSubsetCost, context);
    MPoly1 prod{Int(1)};
    for (size_t idx : subset) prod = mmul(R, prod, lifted[idx]);
    ZPoly cand(prod.size());
    for (size_t i = 0; i < prod.size(); ++i) cand[i] = R.balance(prod[i]);
    znorm(cand);
    auto q = zdiv_exact(Fleft, cand);
    if (!q) return false;
    out_monic.push_back(cand);
    Fleft = std::move(*q);
    return true;
  };

  for (size_t card = 1; !active.empty() && card <= active.size() / 2;) {
    bool found = false;
    std::vector<size_t> comb(card);
    // iterate lexicographic combinations of `active` of size `card`
    std::vector<size_t> idx(card);
    for (size_t i = 0; i < card; ++i) idx[i] = i;
    while (true) {
      for (size_t i = 0; i < card; ++i) comb[i] = active[idx[i]];
      if (try_subset(comb)) {
        std::vector<size_t> na;
        for (size_t a : active)
          if (std::find(comb.begin(), comb.end(), a) == comb.end()) na.push_back(a);
        active = std::move(na);
        found = true;
        break;
      }
      // next combination
      long i = (long)card - 1;
      while (i >= 0 && idx[(size_t)i] == active.size() - card + (size_t)i) --i;
      if (i < 0) break;
      ++idx[(size_t)i];
      for (size_t j = (size_t)i + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++card;
  }
  if (zdeg(Fleft) > 0) out_monic.push_back(Fleft);

  // map back through x -> b*x and take primitive parts
  std::vector<ZPoly> out;
  for (const auto& G : out_monic) {
    ZPoly g(G.size());
    Int pw = 1;
    for (size_t i = 0; i < G.size(); ++i) {
      g[i] = G[i] * pw;
      pw *= b;
    }
    Int c = zcontent(g);
    if (g.back() < 0) c = -c;
    for (auto& x : g) x /= c;
    out.push_back(std::move(g));
  }
  return out;
}

size_t the_variable(const MultiPoly& f) {
  for (size_t v = 0; v < f.nvars(); ++v)
    if (f.degree_in(v) > 0) return v;
  return 0;
}

}  // namespace

Factorization factor_univariate(const MultiPoly& f, FactorBudget& budget) {
  if (f.is_zero()) throw std::invalid_argument("factor_univariate(0)");
  Factorization out;
  auto [c, prim] = content_and_primitive(f);
  out.unit = prim.is_zero() ? 1 : (prim.leading_coeff() < 0 ? -1 : 1);
  out.content_factors = factor_integer(c, budget);
  MultiPoly p = normalize_sign(prim);
  if (p.is_constant()) return out;

  size_t var = the_variable(p);
  for (size_t v = 0; v < p.nvars(); ++v)
    if (v != var && p.degree_in(v) > 0)
      throw std::invalid_argument("factor_univariate: more than one variable");

  for (const auto& [part, mult] : squarefree_decomposition(p)) {
    ZPoly d = to_dense(part, var);
    for (auto& g : factor_squarefree_dense(d, budget, f))
      out.poly_factors.emplace_back(from_dense(f.vars(), var, g), mult);
  }
  sort_poly_factors(out.poly_factors);
  return out;
}

Factorization factor_univariate(const MultiPoly& f) {
  FactorBudget b;
  return factor_univariate(f, b);
}

// ------------------------------------------------- bivariate refinement

namespace {

// truncated power series over Q
struct QS {
  std::vector<Rat> c;  // little-endian, length = precision
};

QS qs_zero(size_t K) { return QS{std::vector<Rat>(K)}; }

QS qs_of(const Rat& r, size_t K) {
  QS q = qs_zero(K);
  q.c[0] = r;
  return q;
}

QS qs_add(const QS& a, const QS& b) {
  QS r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

QS qs_sub(const QS& a, const QS& b) {
  QS r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

QS qs_mul(const QS& a, const QS& b) {
  const size_t K = a.c.size();
  QS r = qs_zero(K);
  for (size_t i = 0; i < K; ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; i + j < K; ++j) {
      if (b.c[j] == 0) continue;
      r.c[i + j] += a.c[i] * b.c[j];
    }
  }
  return r;
}

bool qs_is_zero(const QS& a) {
  for (const auto& x : a.c)
    if (x != 0) return false;
  return true;
}

QS qs_inv(const QS& a) {
  // a.c[0] != 0 required
  const size_t K = a.c.size();
  QS r = qs_zero(K);
  r.c[0] = 1 / a.c[0];
  for (size_t n = 1; n < K; ++n) {
    Rat acc = 0;
    for (size_t i = 1; i <= n; ++i) acc += a.c[i] * r.c[n - i];
    r.c[n] = -acc / a.c[0];
  }
  return r;
}

using SPoly = std::vector<QS>;  // poly in x with series coefficients

void snorm(SPoly& f) {
  while (!f.empty() && qs_is_zero(f.back())) f.pop_back();
}

SPoly smul(const SPoly& a, const SPoly& b, size_t K) {
  if (a.empty() || b.empty()) return {};
  SPoly r(a.size() + b.size() - 1, qs_zero(K));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = qs_add(r[i + j], qs_mul(a[i], b[j]));
  snorm(r);
  return r;
}

SPoly sadd(SPoly a, const SPoly& b, size_t K) {
  if (a.size() < b.size()) a.resize(b.size(), qs_zero(K));
  for (size_t i = 0; i < b.size(); ++i) a[i] = qs_add(a[i], b[i]);
  snorm(a);
  return a;
}

SPoly ssub(SPoly a, const SPoly& b, size_t K) {
  if (a.size() < b.size()) a.resize(b.size(), qs_zero(K));
  for (size_t i = 0; i < b.size(); ++i) a[i] = qs_sub(a[i], b[i]);
  snorm(a);
  return a;
}

// divmod by h with h monic (leading series coefficient = 1)
std::pair<SPoly, SPoly> sdivmod(SPoly f, const SPoly& h, size_t K) {
  if (f.size() < h.size()) return {SPoly{}, std::move(f)};
  SPoly q(f.size() - h.size() + 1, qs_zero(K));
  for (int k = (int)q.size() - 1; k >= 0; --k) {
    QS c = f[(size_t)k + h.size() - 1];
    q[(size_t)k] = c;
    if (!qs_is_zero(c))
      for (size_t i = 0; i < h.size(); ++i)
        f[(size_t)k + i] = qs_sub(f[(size_t)k + i], qs_mul(c, h[i]));
  }
  f.resize(h.size() - 1, qs_zero(K));
  snorm(f);
  snorm(q);
  return {std::move(q), std::move(f)};
}

// One Hensel step in the series ring: from order k to order 2k.
void hensel_step_series(size_t k, size_t K, const SPoly& f, SPoly& g, SPoly& h, SPoly& s,
                        SPoly& t) {
  auto trunc = [&](SPoly a, size_t ord) {
    for (auto& q : a)
      for (size_t i = ord; i < q.c.size(); ++i) q.c[i] = 0;
    snorm(a);
    return a;
  };
  const size_t k2 = std::min(2 * k, K);
  SPoly e = trunc(ssub(f, smul(g, h, K), K), k2);
  auto [q, r] = sdivmod(smul(s, e, K), h, K);
  g = trunc(sadd(sadd(g, smul(t, e, K), K), smul(q, g, K), K), k2);
  h = trunc(sadd(h, r, K), k2);
  SPoly one{qs_of(Rat(1), K)};
  SPoly b = trunc(ssub(sadd(smul(s, g, K), smul(t, h, K), K), one, K), k2);
  auto [c, d] = sdivmod(smul(s, b, K), h, K);
  s = trunc(ssub(s, d, K), k2);
  t = trunc(ssub(ssub(t, smul(t, b, K), K), smul(c, g, K), K), k2);
}

// Lift the monic factorization f = prod fac[i] (mod t) to order K.
void hensel_lift_series(const SPoly& f, std::vector<SPoly>& fac, size_t K) {
  if (fac.size() == 1) {
    fac[0] = f;
    return;
  }
  const size_t half = fac.size() / 2;
  std::vector<SPoly> left(fac.begin(), fac.begin() + (long)half);
  std::vector<SPoly> right(fac.begin() + (long)half, fac.end());
  SPoly g{qs_of(Rat(1), K)}, h{qs_of(Rat(1), K)};
  for (const auto& u : left) g = smul(g, u, K);
  for (const auto& u : right) h = smul(h, u, K);

  // Bezout at t = 0 over Q[x] by extended Euclid
  auto at0 = [&](const SPoly& a) {
    std::vector<Rat> r;
    for (const auto& qc : a) r.push_back(qc.c[0]);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  };
  using QPoly = std::vector<Rat>;
  auto qmul = [](const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return QPoly{};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  auto qnorm = [](QPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  };
  auto qdivmod = [&](QPoly a, const QPoly& b) {
    QPoly q;
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
    return std::pair{q, a};
  };
  QPoly r0 = at0(g), r1 = at0(h), s0{Rat(1)}, s1{}, t0{}, t1{Rat(1)};
  while (!r1.empty()) {
    auto [q, rr] = qdivmod(r0, r1);
    auto step = [&](QPoly& a0, QPoly& a1) {
      QPoly t2 = a0;
      QPoly qs = qmul(q, a1);
      if (t2.size() < qs.size()) t2.resize(qs.size());
      for (size_t i = 0; i < qs.size(); ++i) t2[i] -= qs[i];
      qnorm(t2);
      a0 = std::move(a1);
      a1 = std::move(t2);
    };
    step(s0, s1);
    step(t0, t1);
    r0 = std::move(r1);
    r1 = std::move(rr);
  }
  const Rat u = r0.empty() ? Rat(1) : r0[0];
  auto liftQ = [&](const QPoly& a) {
    SPoly r;
    for (const auto& c : a) r.push_back(qs_of(c / u, K));
    return r;
  };
  SPoly s = liftQ(s0), t = liftQ(t0);

  for (size_t k = 1; k < K; k *= 2) hensel_step_series(k, K, f, g, h, s, t);
  hensel_lift_series(g, left, K);
  hensel_lift_series(h, right, K);
  fac.clear();
  fac.insert(fac.end(), left.begin(), left.end());
  fac.insert(fac.end(), right.begin(), right.end());
}

// Factor a primitive squarefree bivariate polynomial with positive
// leading coefficient and no factors free of `x`.
std::vector<MultiPoly> factor_squarefree_bivariate(const MultiPoly& f, size_t x, size_t y,
                                                   FactorBudget& budget) {
  const VarList& vars = f.vars();
  const int n = f.degree_in(x);
  const int m = f.degree_in(y);
  if (n == 1) return {normalize_sign(f)};

  // leading coefficient of f in x, as a polynomial in y
  MultiPoly lc(vars);
  for (const auto& [e, c] : f.terms())
    if (e[x] == n) {
      Expvec e2 = e;
      e2[x] = 0;
      lc.add_term(e2, c);
    }

  // evaluation point a: degree preserved and fibre squarefree
  Int a = 0;
  MultiPoly fib(vars);
  for (long trial = 0;; ++trial) {
    a = trial % 2 == 0 ? Int(trial / 2) : Int(-(trial + 1) / 2);
    if (lc.eval_var(y, a).is_zero()) continue;
    fib = f.eval_var(y, a);
    if (poly_gcd(fib, fib.derivative(x)).is_constant()) break;
  }

  auto ufac = factor_squarefree_dense(to_dense(fib, x), budget, f);
  if (ufac.size() == 1) return {normalize_sign(f)};

  const size_t K = (size_t)(2 * m + 1);
  // shift y = a + t, build F as SPoly over Q[[t]]/(t^K), monicized
  SPoly F((size_t)n + 1, qs_zero(K));
  for (const auto& [e, c] : f.terms()) {
    // c * (a + t)^e[y] contributes to x-coefficient e[x];
    // (a+t)^ey = sum_k C(ey,k) a^(ey-k) t^k
    const int ey = e[y];
    std::vector<Int> row((size_t)ey + 1);
    for (int k = ey; k >= 0; --k) {
      // compute C(ey,k) a^(ey-k)
      Int ck;
      mpz_bin_uiui(ck.get_mpz_t(), (unsigned long)ey, (unsigned long)k);
      Int ap;
      mpz_pow_ui(ap.get_mpz_t(), a.get_mpz_t(), (unsigned long)(ey - k));
      row[(size_t)k] = ck * ap;
    }
    for (size_t k = 0; k < row.size() && k < K; ++k)
      F[(size_t)e[x]].c[k] += Rat(c * row[k]);
  }
  snorm(F);
  QS lam = F.back();  // lc_x as series; lam.c[0] != 0 by choice of a
  QS lam_inv = qs_inv(lam);
  SPoly Fm = F;
  for (auto& qc : Fm) qc = qs_mul(qc, lam_inv);

  std::vector<SPoly> lifted;
  for (const auto& g : ufac) {
    SPoly s(g.size(), qs_zero(K));
    const Int& glc = g.back();
    for (size_t i = 0; i < g.size(); ++i) s[i] = qs_of(Rat(g[i]) / Rat(glc), K);
    lifted.push_back(std::move(s));
  }
  hensel_lift_series(Fm, lifted, K);

  // recombination with the lc trick
  MultiPoly fleft = f;
  std::vector<MultiPoly> out;
  std::vector<size_t> active(lifted.size());
  for (size_t i = 0; i < active.size(); ++i) active[i] = i;

  auto try_subset = [&](const std::vector<size_t>& subset) -> bool {
    budget.spend(kSubsetCost, f);
    SPoly prod{qs_of(Rat(1), K)};
    for (size_t idx : subset) prod = smul(prod, lifted[idx], K);
    // multiply by the current cofactor's leading coefficient in x
    MultiPoly lcur(vars);
    const int ncur = fleft.degree_in(x);
    for (const auto& [e, c] : fleft.terms())
      if (e[x] == ncur) {
        Expvec e2 = e;
        e2[x] = 0;
        lcur.add_term(e2, c);
      }
    QS lcs = qs_zero(K);
    {
      // shift lcur by y = a + t
      for (const auto& [e, c] : lcur.terms()) {
        const int ey = e[y];
        for (int k = 0; k <= ey && (size_t)k < K; ++k) {
          Int ck;
          mpz_bin_uiui(ck.get_mpz_t(), (unsigned long)ey, (unsigned long)k);
          Int ap;
          mpz_pow_ui(ap.get_mpz_t(), a.get_mpz_t(), (unsigned long)(ey - k));
          lcs.c[(size_t)k] += Rat(c * ck * ap);
        }
      }
    }
    for (auto& qc : prod) qc = qs_mul(qc, lcs);
    // convert to a bivariate polynomial: substitute t = y - a, clear denominators
    Int den = 1;
    for (const auto& qc : prod)
      for (const auto& r : qc.c) {
        Int d = r.get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
      }
    MultiPoly cand(vars);
    for (size_t i = 0; i < prod.size(); ++i) {
      // poly in t: sum_k c_k t^k with t = y - a
      // expand via repeated Horner in (y - a)
      MultiPoly acc(vars);
      MultiPoly ymina = MultiPoly::variable(vars, vars[y]) - MultiPoly::constant(vars, a);
      for (size_t k = prod[i].c.size(); k-- > 0;) {
        Rat r = prod[i].c[k];
        Int num = Int(r.get_num()) * (den / Int(r.get_den()));
        acc = acc * ymina + MultiPoly::constant(vars, num);
      }
      MultiPoly xi = MultiPoly::monomial(vars, [&] {
        Expvec e(vars.size(), 0);
        e[x] = (int)i;
        return e;
      }(), 1);
      cand += acc * xi;
    }
    if (cand.is_zero()) return false;
    // the lc trick leaves a spurious lc_x(cofactor)(y) multiple: strip
    // the content w.r.t. x along with the integer content
    {
      std::vector<MultiPoly> cs((size_t)std::max(cand.degree_in(x), 0) + 1,
                                MultiPoly::zero(vars));
      for (const auto& [e, cc] : cand.terms()) {
        Expvec e2 = e;
        e2[x] = 0;
        cs[(size_t)e[x]].add_term(e2, cc);
      }
      MultiPoly cont = MultiPoly::zero(vars);
      for (const auto& co : cs)
        if (!co.is_zero()) cont = poly_gcd(cont, co);
      if (!cont.is_unit()) cand = *cand.divided_exact(cont);
    }
    cand = normalize_sign(cand.primitive_part());
    if (cand.is_constant()) return false;
    auto q = fleft.divided_exact(cand);
    if (!q) return false;
    out.push_back(cand);
    fleft = std::move(*q);
    return true;
  };

  for (size_t card = 1; !active.empty() && card <= active.size() / 2;) {
    bool found = false;
    std::vector<size_t> idx(card);
    for (size_t i = 0; i < card; ++i) idx[i] = i;
    std::vector<size_t> comb(card);
    while (true) {
      for (size_t i = 0; i < card; ++i) comb[i] = active[idx[i]];
      if (try_subset(comb)) {
        std::vector<size_t> na;
        for (size_t v : active)
          if (std::find(comb.begin(), comb.end(), v) == comb.end()) na.push_back(v);
        active = std::move(na);
        found = true;
        break;
      }
      long i = (long)card - 1;
      while (i >= 0 && idx[(size_t)i] == active.size() - card + (size_t)i) --i;
      if (i < 0) break;
      ++idx[(size_t)i];
      for (size_t j = (size_t)i + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++card;
  }
  if (!fleft.is_constant()) out.push_back(normalize_sign(fleft.primitive_part()));
  return out;
}

}  // namespace

Factorization factor_bivariate(const MultiPoly& f, FactorBudget& budget) {
  if (f.is_zero()) throw std::invalid_argument("factor_bivariate(0)");
  std::vector<size_t> active_vars;
  for (size_t v = 0; v < f.nvars(); ++v)
    if (f.degree_in(v) > 0) active_vars.push_back(v);
  if (active_vars.size() > 2)
    throw std::invalid_argument("factor_bivariate: more than two variables");
  if (active_vars.size() <= 1) return factor_univariate(f, budget);

  Factorization out;
  auto [c, prim] = content_and_primitive(f);
  out.unit = prim.leading_coeff() < 0 ? -1 : 1;
  out.content_factors = factor_integer(c, budget);
  MultiPoly p = normalize_sign(prim);

  // main variable: the one of larger degree (ties: first)
  size_t x = active_vars[0], y = active_vars[1];
  if (f.degree_in(y) > f.degree_in(x)) std::swap(x, y);

  for (const auto& [part, mult] : squarefree_decomposition(p)) {
    // split off the x-free content of the part
    MultiPoly rest = part;
    {
      // content w.r.t. x = gcd of coefficients in (Z[y])[x]
      std::vector<MultiPoly> cs((size_t)std::max(rest.degree_in(x), 0) + 1,
                                MultiPoly::zero(rest.vars()));
      for (const auto& [e, cc] : rest.terms()) {
        Expvec e2 = e;
        e2[x] = 0;
        cs[(size_t)e[x]].add_term(e2, cc);
      }
      MultiPoly cont = MultiPoly::zero(rest.vars());
      for (const auto& co : cs)
        if (!co.is_zero()) cont = poly_gcd(cont, co);
      if (!cont.is_constant()) {
        auto sub = factor_univariate(cont, budget);
        for (auto& [q, e] : sub.poly_factors) out.poly_factors.emplace_back(q, e * mult);
        rest = *rest.divided_exact(cont);
      }
    }
    if (rest.is_constant()) continue;
    if (rest.degree_in(y) == 0 || rest.degree_in(x) == 0) {
      auto sub = factor_univariate(rest, budget);
      for (auto& [q, e] : sub.poly_factors) out.poly_factors.emplace_back(q, e * mult);
      continue;
    }
    for (auto& q : factor_squarefree_bivariate(normalize_sign(rest), x, y, budget))
      out.poly_factors.emplace_back(q, mult);
  }
  sort_poly_factors(out.poly_factors);
  return out;
}

Factorization factor_bivariate(const MultiPoly& f) {
  FactorBudget b;
  return factor_bivariate(f, b);
}

}  // namespace conicmin
