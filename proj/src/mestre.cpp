#include "conicmin/mestre.hpp"

#include "conicmin/poly_gcd.hpp"
#include "conicmin/poly_io.hpp"

#include <mutex>

namespace conicmin {

const VarList& ic_vars() {
  static const VarList v{"I2", "I4", "I6", "I10"};
  return v;
}

const VarList& ek_vars() {
  static const VarList v{"A", "A1", "B", "B1", "B2"};
  return v;
}

IgusaClebsch IgusaClebsch::formal() {
  const VarList& v = ic_vars();
  return IgusaClebsch{RationalFunction(MultiPoly::variable(v, "I2")),
                      RationalFunction(MultiPoly::variable(v, "I4")),
                      RationalFunction(MultiPoly::variable(v, "I6")),
                      RationalFunction(MultiPoly::variable(v, "I10"))};
}

IgusaClebsch IgusaClebsch::from_rationals(const Rat& i2, const Rat& i4, const Rat& i6,
                                          const Rat& i10) {
  const VarList& v = ic_vars();
  return IgusaClebsch{RationalFunction::constant(v, i2), RationalFunction::constant(v, i4),
                      RationalFunction::constant(v, i6), RationalFunction::constant(v, i10)};
}

EKQuantities EKQuantities::formal() {
  const VarList& v = ek_vars();
  return EKQuantities{RationalFunction(MultiPoly::variable(v, "A")),
                      RationalFunction(MultiPoly::variable(v, "A1")),
                      RationalFunction(MultiPoly::variable(v, "B")),
                      RationalFunction(MultiPoly::variable(v, "B1")),
                      RationalFunction(MultiPoly::variable(v, "B2"))};
}

int ic_weighted_degree(const MultiPoly& f) {
  if (f.vars() != ic_vars()) throw MestreError("weighted degree needs the invariant ring");
  static const int w[4] = {1, 2, 3, 5};
  int d = -1;
  for (const auto& [e, c] : f.terms()) {
    int t = 0;
    for (size_t i = 0; i < 4; ++i) t += w[i] * e[i];
    d = std::max(d, t);
  }
  return d;
}

namespace {

Int pow_int(long base, unsigned exp) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)base, exp);
  return r;
}

// common denominator of the printed Gram matrix
const Int& full_denominator() {
  static const Int k = pow_int(2, 10) * pow_int(3, 13) * pow_int(5, 14);
  return k;
}

struct GramEntry {
  const char* numerator;
  unsigned e2, e3, e5;  // denominator 2^e2 3^e3 5^e5
};

// upper-triangular entries of the Mestre Gram matrix over Q[I2,I4,I6,I10]
const GramEntry kMestreGram[6] = {
    // (0,0)
    {"-3*I2^3 - 140*I2*I4 + 800*I6", 6, 4, 6},
    // (0,1)
    {"9*I2^4 + 560*I2^2*I4 + 1600*I4^2 - 3000*I2*I6", 7, 7, 8},
    // (0,2)
    {"-9*I2^5 - 700*I2^3*I4 + 12400*I2*I4^2 + 3600*I2^2*I6 - 48000*I4*I6 - "
     "10800000*I10",
     8, 9, 10},
    // (1,1) = (0,2)
    {"-9*I2^5 - 700*I2^3*I4 + 12400*I2*I4^2 + 3600*I2^2*I6 - 48000*I4*I6 - "
     "10800000*I10",
     8, 9, 10},
    // (1,2)
    {"3*I2^6 + 280*I2^4*I4 + 6000*I2^2*I4^2 - 1400*I2^3*I6 + 8000*I4^3 - "
     "52000*I2*I4*I6 + 120000*I6^2",
     9, 10, 12},
    // (2,2)
    {"-9*I2^7 - 980*I2^5*I4 - 12800*I2^3*I4^2 + 4800*I2^4*I6 + 154000*I2*I4^3 + "
     "162000*I2^2*I4*I6 - 480000*I4^2*I6 - 450000*I2*I6^2 - 8100000*I2^2*I10 - "
     "162000000*I4*I10",
     10, 13, 14},
};

// IC-simplified conic T^(4), printed entries
const char* kT4[6] = {
    "-3*I2^3 - 140*I2*I4 + 800*I6",
    "7*I2^2*I4 + 80*I4^2 - 30*I2*I6",
    "-230*I2*I4^2 - 9*I2^2*I6 + 1040*I4*I6 + 108000*I10",
    "117*I2*I4^2 - 360*I4*I6 - 81000*I10",
    "-50*I2^2*I4^2 + 20*I4^3 + 321*I2*I4*I6 - 540*I6^2 + 24300*I2*I10",
    "-200*I2*I4^3 + 920*I4^2*I6 - 27*I2*I6^2 + 102600*I4*I10",
};
// index map: kT4[0]=(0,0), [1]=(0,1), [2]=(0,2), [3]=(1,1), [4]=(1,2), [5]=(2,2)

const char* kT3_33 =
    "267*I2^3*I4^2 + 1515*I2*I4^3 - 1485*I2^2*I4*I6 - 3600*I4^2*I6 + 2025*I2*I6^2 - "
    "141750*I2^2*I10 - 1215000*I4*I10";

// RM-simplified intermediate T^(2) and final T^(3)
const char* kT2[6] = {
    "-225*A1^3*B + 285*A*A1^2*B1 + 324*B1^3",
    "20*A^2*A1^2 - 45*A1*B*B1 + 36*A*B1^2",
    "1170*A*A1^3*B - 1050*A^2*A1^2*B1 - 1125*A1^4*B2 + 486*A1*B*B1^2 - 1296*A*B1^3",
    "-60*A*A1*B + 4*A^2*B1 + 125*A1^2*B2",
    "-20*A^3*A1^2 - 405*A1^2*B^2 + 234*A*A1*B*B1 - 144*A^2*B1^2 + 1350*A1^2*B1*B2",
    "-4140*A^2*A1^3*B + 3840*A^3*A1^2*B1 + 4275*A*A1^4*B2 + 729*A1^2*B^2*B1 - "
    "3888*A*A1*B*B1^2 + 5184*A^2*B1^3",
};

const char* kT3[6] = {
    "-225*A1^3*B + 285*A*A1^2*B1 + 324*B1^3",
    "20*A^2*A1^2 - 45*A1*B*B1 + 36*A*B1^2",
    "90*A*A1^2*B + 30*A^2*A1*B1 - 375*A1^3*B2 + 162*B*B1^2",
    "-60*A*A1*B + 4*A^2*B1 + 125*A1^2*B2",
    "20*A^3*A1 - 135*A1*B^2 + 18*A*B*B1 + 450*A1*B1*B2",
    "180*A^2*A1*B - 525*A*A1^2*B2 + 81*B^2*B1",
};

const char* kQ2v2 = "-27*A1^2*(-60*A1*A^2*B + 175*A1^2*A*B2 - 27*B1*B^2)";

// conic coefficients (a..f) from upper-triangular Gram entries
Conic conic_from_gram_entries(const VarList& vars, const std::array<MultiPoly, 6>& t) {
  // t = (g00, g01, g02, g11, g12, g22)
  return Conic(vars, {t[0], t[3], t[5], t[1] * 2, t[2] * 2, t[4] * 2});
}

std::array<MultiPoly, 6> parse_entries(const char* const* src, const VarList& vars) {
  std::array<MultiPoly, 6> out{
      parse_poly(src[0], vars), parse_poly(src[1], vars), parse_poly(src[2], vars),
      parse_poly(src[3], vars), parse_poly(src[4], vars), parse_poly(src[5], vars)};
  return out;
}

}  // namespace

MestreResult mestre_conic(const IgusaClebsch& ic) {
  const VarList& target = ic.i2.vars();
  if (ic.i10.is_zero()) throw MestreError("degenerate locus: I10 = 0");
  const Int& K = full_denominator();

  std::map<std::string, RationalFunction> sub{
      {"I2", ic.i2}, {"I4", ic.i4}, {"I6", ic.i6}, {"I10", ic.i10}};

  // entries of K * A after substitution, as rational functions
  std::array<RationalFunction, 6> kA;
  MultiPoly lcm_den = MultiPoly::constant(target, 1);
  for (size_t i = 0; i < 6; ++i) {
    const GramEntry& g = kMestreGram[i];
    MultiPoly num = parse_poly(g.numerator, ic_vars());
    Int mult = K / (pow_int(2, g.e2) * pow_int(3, g.e3) * pow_int(5, g.e5));
    kA[i] = substitute(num, sub) * RationalFunction(MultiPoly::constant(target, mult));
    if (!kA[i].is_polynomial()) {
      MultiPoly g2 = poly_gcd(lcm_den, kA[i].den());
      lcm_den = *(lcm_den * kA[i].den()).divided_exact(g2);
    }
  }
  RationalFunction extra(lcm_den);
  std::array<MultiPoly, 6> entries;
  for (size_t i = 0; i < 6; ++i) entries[i] = (kA[i] * extra).as_polynomial();

  MestreResult r{conic_from_gram_entries(target, entries),
                 RationalFunction(MultiPoly::constant(target, K)) * extra};
  return r;
}

namespace {

ChainResult build_ic_chain() {
  const VarList& V = ic_vars();
  const RationalFunction one = RationalFunction::one(V);
  const Int& K = full_denominator();

  MestreResult start = mestre_conic(IgusaClebsch::formal());
  TransformLog log;
  Conic cur = start.conic;
  auto apply = [&](const std::string& label, const Mat3& u, const RationalFunction& sc) {
    Conic next = transform(cur, u, sc);
    log.append(make_transform_step(label, u, sc, next));
    cur = next;
  };

  const MultiPoly i2 = MultiPoly::variable(V, "I2");
  const MultiPoly i4 = MultiPoly::variable(V, "I4");
  const MultiPoly zero = MultiPoly::zero(V);
  auto cst = [&](long v) { return MultiPoly::constant(V, v); };

  // basis {e1, e2, v1}, v1 = I2 e2 + 450 e3
  Mat3 b1 = Mat3::from_columns({{{cst(1), zero, zero}, {zero, cst(1), zero}, {zero, i2, cst(450)}}});
  apply("ic chain: basis {e1, e2, v1}", b1, one);

  // basis {9000 e1, 1350 v2, 607500 e3}, v2 = I2 e1 + 450 e2
  Mat3 b2 = Mat3::from_columns(
      {{{cst(9000), zero, zero}, {i2 * 1350, cst(607500), zero}, {zero, zero, cst(607500)}}});
  apply("ic chain: basis {9000 e1, 1350 v2, 607500 e3}",
        b2, RationalFunction(cst(1), MultiPoly::constant(V, K)));
  if (cur.c() != parse_poly(kT3_33, V))
    throw MestreError("ic chain fixture mismatch: T3 (3,3) entry");

  // basis {e1, e2, v3 / 10}, v3 = 7 I4 e1 + I2 e2 - 2 e3
  Mat3 b3 = Mat3::from_columns(
      {{{cst(10), zero, zero}, {zero, cst(10), zero}, {i4 * 7, i2, cst(-2)}}});
  apply("ic chain: basis {e1, e2, v3/10}", b3, RationalFunction(cst(1), cst(100)));

  Conic t4 = conic_from_gram_entries(V, parse_entries(kT4, V));
  if (cur != t4) throw MestreError("ic chain fixture mismatch: T4 entries");
  return ChainResult{start.conic, cur, std::move(log)};
}

ChainResult build_rm_chain() {
  const VarList& E = ek_vars();
  const Conic& t4 = ic_simplified_conic();
  IgusaClebsch ek_ic = ic_from_ek(EKQuantities::formal());
  std::map<std::string, RationalFunction> sub{
      {"I2", ek_ic.i2}, {"I4", ek_ic.i4}, {"I6", ek_ic.i6}, {"I10", ek_ic.i10}};

  const MultiPoly a1 = MultiPoly::variable(E, "A1");
  const MultiPoly a = MultiPoly::variable(E, "A");
  const MultiPoly a1cube = a1 * a1 * a1;

  // clear the A1^3 denominator introduced by the substitution
  std::array<MultiPoly, 6> c0;
  for (size_t i = 0; i < 6; ++i) {
    RationalFunction v = substitute(t4.coeffs()[i], sub) * RationalFunction(a1cube);
    if (!v.is_polynomial())
      throw MestreError("rm chain: A1^3 does not clear the substitution");
    c0[i] = v.as_polynomial();
  }
  Conic source(E, c0);

  TransformLog log;
  Conic cur = source;
  auto apply = [&](const std::string& label, const Mat3& u, const RationalFunction& sc) {
    Conic next = transform(cur, u, sc);
    log.append(make_transform_step(label, u, sc, next));
    cur = next;
  };
  auto cst = [&](long v) { return MultiPoly::constant(E, v); };
  const MultiPoly zero = MultiPoly::zero(E);

  // T2 = (A1^3/2) * Gram of Q1 w.r.t. {e1/8, e2/(36 A1), e3/24}
  Mat3 w = Mat3::diag(a1 * 9, cst(2), a1 * 3);
  apply("rm chain: scaled basis to T2", w,
        RationalFunction(cst(1), a1 * a1 * 10368));
  Conic t2 = conic_from_gram_entries(E, parse_entries(kT2, E));
  if (cur != t2) throw MestreError("rm chain fixture mismatch: T2 entries");

  // Q2(v2) with v2 = 4A e1 + e3
  MultiPoly q2v2 = cur.eval(a * 4, zero, cst(1));
  if (q2v2 != parse_poly(kQ2v2, E))
    throw MestreError("rm chain fixture mismatch: Q2(v2)");

  // basis {e1, e2, v2/(3 A1)}
  Mat3 u2 = Mat3::from_columns(
      {{{a1 * 3, zero, zero}, {zero, a1 * 3, zero}, {a * 4, zero, cst(1)}}});
  apply("rm chain: basis {e1, e2, v2/(3 A1)}", u2, RationalFunction(cst(1), a1 * a1 * 9));
  Conic t3 = conic_from_gram_entries(E, parse_entries(kT3, E));
  if (cur != t3) throw MestreError("rm chain fixture mismatch: T3 entries");

  return ChainResult{source, cur, std::move(log)};
}

}  // namespace

ChainResult ic_simplified() {
  static const ChainResult r = build_ic_chain();
  return r;
}

const Conic& ic_simplified_conic() {
  static const Conic c = ic_simplified().conic;
  return c;
}

IgusaClebsch ic_from_ek(const EKQuantities& ek) {
  if (ek.a1.is_zero()) throw MestreError("ic_from_ek: A1 = 0");
  const VarList& v = ek.a.vars();
  auto cst = [&](long x) { return RationalFunction(MultiPoly::constant(v, x)); };
  return IgusaClebsch{
      cst(-24) * ek.b1 / ek.a1,
      cst(-12) * ek.a,
      cst(96) * ek.a * ek.b1 / ek.a1 - cst(36) * ek.b,
      cst(-4) * ek.a1 * ek.b2,
  };
}

ChainResult rm_simplified() {
  static const ChainResult r = build_rm_chain();
  return r;
}

const Conic& rm_simplified_conic() {
  static const Conic c = rm_simplified().conic;
  return c;
}

}  // namespace conicmin
