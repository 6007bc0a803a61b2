// The Mestre conic from Igusa-Clebsch invariants, its IC-simplified
// form, and the RM-simplified form in the Elkies-Kumar quantities.  The
// basis chains run in formal variables and are checked entry-by-entry
// against fixed polynomial fixtures, so numeric inputs reuse a verified
// chain by substitution.
#pragma once

#include "conicmin/conic.hpp"

namespace conicmin {

struct MestreError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ring Z[I2, I4, I6, I10]; projective weights (1, 2, 3, 5), formal
// degree 1 each
const VarList& ic_vars();
// ring Z[A, A1, B, B1, B2]
const VarList& ek_vars();

struct IgusaClebsch {
  RationalFunction i2, i4, i6, i10;
  static IgusaClebsch formal();  // the four symbols as variables
  static IgusaClebsch from_rationals(const Rat& i2, const Rat& i4, const Rat& i6,
                                     const Rat& i10);
};

struct EKQuantities {
  RationalFunction a, a1, b, b1, b2;
  static EKQuantities formal();
};

// weighted degree with weights (1, 2, 3, 5) on (I2, I4, I6, I10)
int ic_weighted_degree(const MultiPoly& f);

// Integral model of the Mestre conic: the printed rational Gram matrix
// scaled by 2^10 3^13 5^14 and by whatever additional denominator the
// substituted invariant values carry.  `scale` records the multiplier
// applied to the rational form.
struct MestreResult {
  Conic conic;
  RationalFunction scale;
};
MestreResult mestre_conic(const IgusaClebsch& ic);

struct ChainResult {
  Conic source;  // integral starting conic of the chain
  Conic conic;   // simplified form
  TransformLog log;
};

// Basis chain to the IC-simplified conic T^(4); verified against the
// stored entries (MestreError on mismatch).
ChainResult ic_simplified();

// The IC-simplified conic as a value (coefficients over ic_vars()).
const Conic& ic_simplified_conic();

// (I2, I4, I6, I10) = (-24 B1/A1, -12 A, 96 A B1/A1 - 36 B, -4 A1 B2)
IgusaClebsch ic_from_ek(const EKQuantities& ek);

// Substitution of the Elkies-Kumar invariants into the IC-simplified
// conic followed by the printed scaled-basis chain to T^(3); verified
// against the stored entries, including the Q2(v2) identity.
ChainResult rm_simplified();

const Conic& rm_simplified_conic();

}  // namespace conicmin
