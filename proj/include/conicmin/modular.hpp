// Computation modulo a prime element: an odd rational prime or an
// irreducible polynomial.  Classifies the singular locus of a conic's
// reduction and lifts the transformations that move it to (0:0:1) or
// {Z = 0}.  Everything uses adjugates and divisibility tests; no
// residue-field inversion.
#pragma once

#include "conicmin/conic.hpp"

namespace conicmin {

class PrimeElement {
 public:
  enum class Kind { RationalPrime, IrreduciblePoly };

  // p an odd prime; p = 2 (and non-primes) are rejected.
  static PrimeElement rational(Int p);
  // pi primitive, nonconstant; irreducibility certified through the
  // factor module unless the caller already owns a certificate.
  static PrimeElement polynomial(MultiPoly pi, bool certify = true);

  Kind kind() const { return kind_; }
  const Int& prime() const { return p_; }
  const MultiPoly& poly() const { return pi_; }

  std::string str() const;
  bool operator==(const PrimeElement& o) const {
    return kind_ == o.kind_ && p_ == o.p_ && pi_ == o.pi_;
  }

 private:
  PrimeElement() = default;
  Kind kind_ = Kind::RationalPrime;
  Int p_ = 0;
  MultiPoly pi_;
};

bool is_zero_mod(const MultiPoly& f, const PrimeElement& pi);

// Size reduction of f modulo pi: symmetric residues for a rational
// prime; for a polynomial, multivariate division restricted to steps
// whose coefficients divide exactly (a best-effort representative).
MultiPoly reduce_mod(const MultiPoly& f, const PrimeElement& pi);

// pi-adic valuation: content valuation for rational primes, exact
// division count for polynomials.  f must be nonzero.
int valuation_at(const MultiPoly& f, const PrimeElement& pi);

struct SingularLocus {
  enum class Kind { Nonsingular, Point, Line };
  Kind kind = Kind::Nonsingular;
  std::array<MultiPoly, 3> vec;  // point rep or line functional, Point/Line only
};

// Classification of the reduction of L modulo pi through det and
// adjugate of the doubled Gram matrix.  Throws when all coefficients
// vanish mod pi ("not scale-minimal at pi").
SingularLocus singular_locus_mod(const Conic& L, const PrimeElement& pi);

// U with third column an integral representative of the singular point
// v and unit-at-pi determinant +-v_k.
Mat3 lift_point_transform(const std::array<MultiPoly, 3>& v, const PrimeElement& pi);

// U whose first two columns span ker(w . ) via w_k e_i - w_i e_k and
// whose third column is e_k; det = +-w_k^2.
Mat3 lift_line_transform(const std::array<MultiPoly, 3>& w, const PrimeElement& pi);

}  // namespace conicmin
