// Prime elements, singular-locus classification, lifts.
#include "doctest.h"

#include "conicmin/modular.hpp"
#include "conicmin/poly_gcd.hpp"
#include "conicmin/poly_io.hpp"

#include <random>

using namespace conicmin;

namespace {

const VarList T{"t1", "t2"};

MultiPoly P(const std::string& s) { return parse_poly(s, T); }

Conic make(const std::string& a, const std::string& b, const std::string& c,
           const std::string& d = "0", const std::string& e = "0",
           const std::string& f = "0") {
  return Conic(T, {P(a), P(b), P(c), P(d), P(e), P(f)});
}

bool vec_is_zero_mod(const std::array<MultiPoly, 3>& v, const PrimeElement& pi) {
  for (const auto& x : v)
    if (!is_zero_mod(x, pi)) return false;
  return true;
}

}  // namespace

TEST_CASE("prime element validation") {
  CHECK_THROWS(PrimeElement::rational(2));
  CHECK_THROWS(PrimeElement::rational(9));
  CHECK_NOTHROW(PrimeElement::rational(7));
  CHECK_NOTHROW(PrimeElement::polynomial(P("t1 - t2")));
  CHECK_THROWS(PrimeElement::polynomial(P("t1^2 - t2^2")));        // reducible
  CHECK_THROWS(PrimeElement::polynomial(P("2*t1 + 2*t2")));        // imprimitive
  CHECK_THROWS(PrimeElement::polynomial(P("5")));                  // constant
}

TEST_CASE("is_zero_mod") {
  auto pi = PrimeElement::polynomial(P("t1 - t2"));
  CHECK(is_zero_mod(P("t1^2 - t2^2"), pi));
  CHECK_FALSE(is_zero_mod(P("t1"), pi));
  auto p5 = PrimeElement::rational(5);
  CHECK(is_zero_mod(P("15"), p5));
  CHECK_FALSE(is_zero_mod(P("5*t1 + 3"), p5));
}

TEST_CASE("reduce_mod") {
  auto p5 = PrimeElement::rational(5);
  CHECK(reduce_mod(P("7*t1 + 13"), p5) == P("2*t1 - 2"));
  auto pi = PrimeElement::polynomial(P("t1 - t2"));
  auto r = reduce_mod(P("t1^2*t2 + t1"), pi);
  CHECK(is_zero_mod(P("t1^2*t2 + t1") - r, pi));
  CHECK(r.degree_in(0) < 1);  // fully reduced in t1 (monic leading term)
}

TEST_CASE("singular locus: point at a rational prime") {
  auto p = PrimeElement::rational(5);
  Conic L = make("1", "1", "-25");
  auto s = singular_locus_mod(L, p);
  REQUIRE(s.kind == SingularLocus::Kind::Point);
  CHECK(s.vec[0].is_zero());
  CHECK(s.vec[1].is_zero());
  CHECK(s.vec[2].is_one());
}

TEST_CASE("singular locus: line at a rational prime") {
  auto p = PrimeElement::rational(5);
  Conic L = make("1", "5", "5");
  auto s = singular_locus_mod(L, p);
  REQUIRE(s.kind == SingularLocus::Kind::Line);
  CHECK(s.vec[0].is_one());
  CHECK(s.vec[1].is_zero());
  CHECK(s.vec[2].is_zero());
}

TEST_CASE("singular locus: point at a polynomial prime") {
  auto pi = PrimeElement::polynomial(P("t2"));
  Conic L = make("1", "-t1", "-t2");
  auto s = singular_locus_mod(L, pi);
  REQUIRE(s.kind == SingularLocus::Kind::Point);
  CHECK(s.vec[0].is_zero());
  CHECK(s.vec[1].is_zero());
  CHECK(s.vec[2].is_one());
}

TEST_CASE("singular locus errors and nonsingular case") {
  auto p = PrimeElement::rational(5);
  CHECK_THROWS(singular_locus_mod(make("5", "5", "5"), p));
  CHECK(singular_locus_mod(make("1", "1", "1"), p).kind ==
        SingularLocus::Kind::Nonsingular);
}

TEST_CASE("lift_point_transform") {
  auto pi = PrimeElement::polynomial(P("t1"));
  const MultiPoly zero = P("0"), one = P("1");

  Mat3 u1 = lift_point_transform({zero, zero, one}, pi);
  CHECK(u1 == Mat3::identity(T));

  Mat3 u2 = lift_point_transform({one, zero, zero}, pi);
  CHECK(u2.det() == one);
  CHECK(u2.at(0, 2) == one);  // third column is v = e1

  Mat3 u3 = lift_point_transform({P("t2"), zero, one}, pi);
  CHECK(u3.det() == one);
  // moving the singular point of X^2 - t2^2 Y^2 ... check kernel transport
  Conic L = make("1", "-t2^2", "-t1", "0", "0", "0");
  // v = (0,0,1) is singular mod t1 for L; transported check on a mixed case below
  (void)L;
}

TEST_CASE("lift_line_transform spec cases") {
  auto pi = PrimeElement::polynomial(P("t1"));
  const MultiPoly zero = P("0"), one = P("1");

  CHECK(lift_line_transform({zero, zero, one}, pi) == Mat3::identity(T));

  Mat3 u2 = lift_line_transform({one, zero, zero}, pi);
  MultiPoly d2 = u2.det();
  CHECK((d2 == one || d2 == -one));

  Mat3 u3 = lift_line_transform({P("t2"), one, zero}, pi);
  MultiPoly d3 = u3.det();
  CHECK((d3 == one || d3 == -one));
  // columns 1, 2 lie in ker(w . ) exactly
  for (int c = 0; c < 2; ++c) {
    MultiPoly dot = P("t2") * u3.at(0, c) + u3.at(1, c);
    CHECK(dot.is_zero());
  }
}

TEST_CASE("locus and lift invariants on seeded instances") {
  std::mt19937_64 rng(2025);
  std::uniform_int_distribution<int> coef(-6, 6);
  auto pi_poly = PrimeElement::polynomial(P("t1 + t2 + 1"));
  auto p7 = PrimeElement::rational(7);

  int points = 0, lines = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const PrimeElement& pi = trial % 2 ? pi_poly : p7;
    MultiPoly pival = pi.kind() == PrimeElement::Kind::RationalPrime
                          ? MultiPoly::constant(T, pi.prime())
                          : pi.poly();
    // rank-2 (point) and rank-1 (line) constructions
    std::array<MultiPoly, 6> c;
    if (trial % 4 < 2) {
      // u X^2 + v Y^2 + pi * (random)
      c = {P("1"), MultiPoly::constant(T, coef(rng) * 2 + 1), pival * coef(rng),
           pival * coef(rng), pival * coef(rng), pival * coef(rng)};
    } else {
      // (w . x)^2 + pi * (random)
      MultiPoly w0 = MultiPoly::constant(T, coef(rng)), w1 = MultiPoly::constant(T, 1),
                w2 = MultiPoly::constant(T, coef(rng));
      c = {w0 * w0 + pival * coef(rng), w1 * w1 + pival * coef(rng),
           w2 * w2 + pival * coef(rng), 2 * w0 * w1 + pival * coef(rng),
           2 * w0 * w2 + pival * coef(rng), 2 * w1 * w2 + pival * coef(rng)};
    }
    Conic L = [&]() -> Conic {
      try {
        return Conic(T, c);
      } catch (const ConicError&) {
        return make("1", "1", "1");
      }
    }();
    if (!is_zero_mod(L.delta(), pi)) continue;
    SingularLocus s;
    try {
      s = singular_locus_mod(L, pi);
    } catch (const ConicError&) {
      continue;
    }
    Mat3 m = L.doubled_gram();
    if (s.kind == SingularLocus::Kind::Point) {
      ++points;
      // (2G) v = 0 mod pi
      for (int r = 0; r < 3; ++r) {
        MultiPoly dot = m.at(r, 0) * s.vec[0] + m.at(r, 1) * s.vec[1] + m.at(r, 2) * s.vec[2];
        CHECK(is_zero_mod(dot, pi));
      }
      Mat3 u = lift_point_transform(s.vec, pi);
      CHECK_FALSE(is_zero_mod(u.det(), pi));
    } else if (s.kind == SingularLocus::Kind::Line) {
      ++lines;
      // rows of 2G proportional to w mod pi
      for (int r = 0; r < 3; ++r)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            MultiPoly cross = m.at(r, i) * s.vec[(size_t)j] - m.at(r, j) * s.vec[(size_t)i];
            CHECK(is_zero_mod(cross, pi));
          }
      Mat3 u = lift_line_transform(s.vec, pi);
      CHECK_FALSE(is_zero_mod(u.det(), pi));
      // transformed conic: only the Z^2 coefficient survives mod pi
      Conic Lu = transform(L, u, RationalFunction::one(T));
      CHECK(is_zero_mod(Lu.a(), pi));
      CHECK(is_zero_mod(Lu.b(), pi));
      CHECK(is_zero_mod(Lu.d(), pi));
      CHECK(is_zero_mod(Lu.e(), pi));
      CHECK(is_zero_mod(Lu.f(), pi));
      CHECK_FALSE(is_zero_mod(Lu.c(), pi));
    }
  }
  CHECK(points > 5);
  CHECK(lines > 5);
}
