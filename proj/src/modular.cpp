#include "conicmin/modular.hpp"

#include "conicmin/poly_gcd.hpp"

#include <algorithm>

namespace conicmin {

PrimeElement PrimeElement::rational(Int p) {
  if (p < 0) p = -p;
  if (p == 2) throw std::invalid_argument("minimisation at 2 is excluded");
  if (!is_probable_prime(p)) throw std::invalid_argument("not a prime: " + p.get_str());
  PrimeElement e;
  e.kind_ = Kind::RationalPrime;
  e.p_ = std::move(p);
  return e;
}

PrimeElement PrimeElement::polynomial(MultiPoly pi, bool certify) {
  if (pi.is_zero() || pi.is_constant())
    throw std::invalid_argument("prime element must be nonconstant");
  if (pi.content() != 1) throw std::invalid_argument("prime element must be primitive");
  pi = normalize_sign(pi);
  if (certify) {
    auto f = factor_bivariate(pi);
    if (f.poly_factors.size() != 1 || f.poly_factors[0].second != 1)
      throw std::invalid_argument("prime element is reducible: " + pi.str());
  }
  PrimeElement e;
  e.kind_ = Kind::IrreduciblePoly;
  e.pi_ = std::move(pi);
  return e;
}

std::string PrimeElement::str() const {
  return kind_ == Kind::RationalPrime ? p_.get_str() : pi_.str();
}

bool is_zero_mod(const MultiPoly& f, const PrimeElement& pi) {
  if (f.is_zero()) return true;
  if (pi.kind() == PrimeElement::Kind::RationalPrime)
    return mpz_divisible_p(f.content().get_mpz_t(), pi.prime().get_mpz_t());
  return f.divisible_by(pi.poly());
}

MultiPoly reduce_mod(const MultiPoly& f, const PrimeElement& pi) {
  if (f.is_zero()) return f;
  if (pi.kind() == PrimeElement::Kind::RationalPrime) {
    const Int& p = pi.prime();
    const Int half = (p - 1) / 2;
    MultiPoly r(f.vars());
    for (const auto& [e, c] : f.terms()) {
      Int m = c % p;
      if (m < 0) m += p;
      if (m > half) m -= p;
      r.add_term(e, m);
    }
    return r;
  }
  // polynomial modulus: cancel terms divisible by the leading term of pi
  const MultiPoly& m = pi.poly();
  const Expvec& le = m.leading_exponent();
  const Int& lc = m.leading_coeff();
  MultiPoly r = f;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [e, c] : r.terms()) {
      bool div = true;
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i] < le[i]) {
          div = false;
          break;
        }
      if (!div) continue;
      Int q = c / lc;
      if (q * lc != c) continue;
      Expvec shift(e.size());
      for (size_t i = 0; i < e.size(); ++i) shift[i] = e[i] - le[i];
      r -= MultiPoly::monomial(r.vars(), shift, q) * m;
      progress = true;
      break;  // term map changed, restart scan
    }
  }
  return r;
}

int valuation_at(const MultiPoly& f, const PrimeElement& pi) {
  if (pi.kind() == PrimeElement::Kind::RationalPrime) return f.valuation_int(pi.prime());
  return f.valuation(pi.poly());
}

namespace {

// Smaller, canonical-ish representative of a kernel vector: reduce each
// entry, strip the common gcd, and for rational primes rescale so the
// pivot entry becomes 1.
std::array<MultiPoly, 3> normalize_vec(std::array<MultiPoly, 3> v, const PrimeElement& pi) {
  for (auto& x : v) x = reduce_mod(x, pi);
  MultiPoly g = MultiPoly::zero(v[0].vars());
  for (const auto& x : v) g = poly_gcd(g, x);
  if (!g.is_unit() && !g.is_zero())
    for (auto& x : v) x = *x.divided_exact(g);
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    if (x.leading_coeff() < 0)
      for (auto& y : v) y = -y;
    break;
  }

  if (pi.kind() == PrimeElement::Kind::RationalPrime) {
    const Int& p = pi.prime();
    // pick the pivot: smallest |constant| entry not divisible by p,
    // else first non-divisible entry
    int pivot = -1;
    Int best = 0;
    for (int i = 0; i < 3; ++i) {
      if (is_zero_mod(v[(size_t)i], pi)) continue;
      if (!v[(size_t)i].is_constant()) continue;
      Int a = abs(v[(size_t)i].constant_value());
      if (pivot < 0 || a < best) {
        pivot = i;
        best = a;
      }
    }
    if (pivot >= 0) {
      // scale by the inverse of the pivot mod p
      Int inv;
      Int pv = v[(size_t)pivot].constant_value();
      mpz_invert(inv.get_mpz_t(), pv.get_mpz_t(), p.get_mpz_t());
      for (auto& x : v) x = reduce_mod(x * inv, pi);
    }
  }
  return v;
}

// pivot index: prefer unit constants, then small constants, then low
// degree and few terms; deterministic.
int pick_pivot(const std::array<MultiPoly, 3>& v, const PrimeElement& pi) {
  int best = -1;
  auto better = [&](int i, int j) {
    // true if i beats j
    const MultiPoly&a = v[(size_t)i];
    const MultiPoly&b = v[(size_t)j];
    auto key = [](const MultiPoly& p) {
      int unit = p.is_unit() ? 0 : 1;
      int constant = p.is_constant() ? 0 : 1;
      return std::tuple(unit, constant, p.total_degree(), (int)p.term_count());
    };
    if (key(a) != key(b)) return key(a) < key(b);
    return i < j;
  };
  for (int i = 0; i < 3; ++i) {
    if (is_zero_mod(v[(size_t)i], pi)) continue;
    if (best < 0 || better(i, best)) best = i;
  }
  if (best < 0) throw ConicError("vector vanishes mod pi");
  return best;
}

}  // namespace

SingularLocus singular_locus_mod(const Conic& L, const PrimeElement& pi) {
  bool all_zero = true;
  for (const auto& c : L.coeffs()) all_zero = all_zero && is_zero_mod(c, pi);
  if (all_zero) throw ConicError("not scale-minimal at " + pi.str());

  if (!is_zero_mod(L.delta(), pi)) return SingularLocus{SingularLocus::Kind::Nonsingular, {}};

  Mat3 m = L.doubled_gram();
  Mat3 adj = m.adjugate();
  // first nonzero column of the adjugate spans the kernel
  for (int col = 0; col < 3; ++col) {
    std::array<MultiPoly, 3> v{adj.at(0, col), adj.at(1, col), adj.at(2, col)};
    bool nz = false;
    for (const auto& x : v) nz = nz || !is_zero_mod(x, pi);
    if (nz) return SingularLocus{SingularLocus::Kind::Point, normalize_vec(std::move(v), pi)};
  }
  // adjugate vanishes: rank one, any nonzero row is the double line
  for (int row = 0; row < 3; ++row) {
    std::array<MultiPoly, 3> w{m.at(row, 0), m.at(row, 1), m.at(row, 2)};
    bool nz = false;
    for (const auto& x : w) nz = nz || !is_zero_mod(x, pi);
    if (nz) return SingularLocus{SingularLocus::Kind::Line, normalize_vec(std::move(w), pi)};
  }
  throw ConicError("not scale-minimal at " + pi.str());  // unreachable given the first check
}

Mat3 lift_point_transform(const std::array<MultiPoly, 3>& v_in, const PrimeElement& pi) {
  auto v = normalize_vec(v_in, pi);
  const VarList& vars = v[0].vars();
  const int k = pick_pivot(v, pi);
  std::array<std::array<MultiPoly, 3>, 3> cols;
  int c = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == k) continue;
    cols[(size_t)c] = {MultiPoly::zero(vars), MultiPoly::zero(vars), MultiPoly::zero(vars)};
    cols[(size_t)c][(size_t)i] = MultiPoly::constant(vars, 1);
    ++c;
  }
  cols[2] = v;
  return Mat3::from_columns(cols);
}

Mat3 lift_line_transform(const std::array<MultiPoly, 3>& w_in, const PrimeElement& pi) {
  auto w = normalize_vec(w_in, pi);
  const VarList& vars = w[0].vars();
  const int k = pick_pivot(w, pi);
  std::array<std::array<MultiPoly, 3>, 3> cols;
  int c = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == k) continue;
    // w_k e_i - w_i e_k
    cols[(size_t)c] = {MultiPoly::zero(vars), MultiPoly::zero(vars), MultiPoly::zero(vars)};
    cols[(size_t)c][(size_t)i] = w[(size_t)k];
    cols[(size_t)c][(size_t)k] = -w[(size_t)i];
    ++c;
  }
  cols[2] = {MultiPoly::zero(vars), MultiPoly::zero(vars), MultiPoly::zero(vars)};
  cols[2][(size_t)k] = MultiPoly::constant(vars, 1);
  return Mat3::from_columns(cols);
}

}  // namespace conicmin
