// Singular-point analysis, resultant reports, quadratic interpolation.
#include "doctest.h"

#include "conicmin/analysis.hpp"
#include "conicmin/poly_gcd.hpp"
#include "conicmin/poly_io.hpp"
#include "conicmin/rational_function.hpp"

using namespace conicmin;

namespace {
MultiPoly gh(const std::string& s) { return parse_poly(s, gh_vars()); }
}  // namespace

TEST_CASE("fixture integrity") {
  CHECK(lambda21_fixture().term_count() == 13);
  CHECK(lambda40_fixture() == lambda40_factor1() * lambda40_factor2());
  CHECK(qd_table().size() == 14);
  CHECK(pd_table().size() == 5);
  // q_D table round-trips through the parser
  for (const auto& [d, q] : qd_table()) CHECK(parse_poly(q.str(), gh_vars()) == q);
  // q_21 in the table matches the standalone fixture
  for (const auto& [d, q] : qd_table())
    if (d == 21) CHECK(q == q21_fixture());
}

TEST_CASE("singular_points: simple cases") {
  auto s1 = singular_points(gh("g^2 + h^2"));
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].g_condition == gh("g"));
  CHECK(s1[0].h_condition == gh("h"));
  CHECK_FALSE(s1[0].pairing.has_value());
  CHECK(condition_pair_annihilates(s1[0], gh("g^2 + h^2")));

  auto s2 = singular_points(gh("g*h"));
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].g_condition == gh("g"));
  CHECK(s2[0].h_condition == gh("h"));

  // smooth curve: no singular points
  CHECK(singular_points(gh("g^2 + h^2 - 1")).empty());

  CHECK_THROWS_AS(singular_points(gh("g^2")), AnalysisError);  // not squarefree
}

TEST_CASE("singular_points of lambda40") {
  auto classes = singular_points(lambda40_fixture());
  REQUIRE(classes.size() == 3);
  // sorted by degree of the g-condition, then termwise
  CHECK(classes[0].g_condition == gh("g - 9"));
  CHECK(classes[0].h_condition == gh("h^2 - 80"));
  CHECK(classes[1].g_condition == gh("g - 8"));
  CHECK(classes[1].h_condition == gh("2*h^2 - 125"));
  CHECK(classes[2].g_condition == gh("3*g + 1"));
  CHECK(classes[2].h_condition == gh("h"));
  for (const auto& c : classes) {
    CHECK_FALSE(c.pairing.has_value());
    CHECK(condition_pair_annihilates(c, lambda40_fixture()));
  }
}

TEST_CASE("singular_points with an irrational conjugate class") {
  // (g^2 - 2)(h^2 - 2) + shift: nodes of (g^2-2)*(g-h) style crossing
  MultiPoly f = gh("(g^2 - 2 - h)*(g^2 - 2 + h)");  // singular where h = 0, g^2 = 2
  auto classes = singular_points(f);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].g_condition == gh("g^2 - 2"));
  CHECK(classes[0].h_condition == gh("h"));
  CHECK(condition_pair_annihilates(classes[0], f));
}

TEST_CASE("resultant_report on the lambda21 pair") {
  auto rep = resultant_report(lambda21_fixture(), q21_fixture());
  CHECK(rep.res_g ==
        gh("746496*(27*h^2 - 1)^2*(3*h^4 + 27*h^2 - 25)^2"));
  CHECK(rep.res_h == gh("64*(27*g^2 - 25)^2*(27*g^4 + 342*g^2 - 289)^2"));

  // factored forms
  REQUIRE(rep.res_g_factored.poly_factors.size() == 2);
  CHECK(rep.res_g_factored.poly_factors[0] == std::pair{gh("27*h^2 - 1"), 2});
  CHECK(rep.res_g_factored.poly_factors[1] == std::pair{gh("3*h^4 + 27*h^2 - 25"), 2});
  CHECK(rep.res_g_factored.unit == 1);
  CHECK(rep.res_g_factored.content_factors ==
        std::vector<std::pair<Int, int>>{{2, 10}, {3, 6}});

  REQUIRE(rep.res_h_factored.poly_factors.size() == 2);
  CHECK(rep.res_h_factored.poly_factors[0] == std::pair{gh("27*g^2 - 25"), 2});
  CHECK(rep.res_h_factored.poly_factors[1] == std::pair{gh("27*g^4 + 342*g^2 - 289"), 2});
  CHECK(rep.res_h_factored.content_factors ==
        std::vector<std::pair<Int, int>>{{2, 6}});

  // coprime degree-1 pair meeting nowhere affinely: constants
  auto small = resultant_report(gh("g + 1"), gh("g - 1"));
  CHECK(small.res_g.is_constant());
  CHECK(small.res_h.is_constant());
}

TEST_CASE("quadratic_ansatz recovers q40") {
  auto classes = singular_points(lambda40_fixture());
  auto basis = quadratic_ansatz(classes, gh_vars());
  REQUIRE(basis.size() == 1);
  MultiPoly q = basis[0];
  CHECK((q == q40_candidate() || q == -q40_candidate()));
  // the interpolant vanishes on every class: direct division checks
  CHECK(q.eval_var(0, 8).divisible_by(gh("2*h^2 - 125")));
  CHECK(q.eval_var(0, 9).divisible_by(gh("h^2 - 80")));
  std::map<std::string, RationalFunction> third{
      {"g", RationalFunction::constant(gh_vars(), Rat(-1, 3))},
      {"h", RationalFunction::constant(gh_vars(), Rat(0))}};
  CHECK(substitute(q, third).is_zero());
}

TEST_CASE("quadratic_ansatz dimension counts") {
  // four generic rational points: 2-dimensional space
  std::vector<ConditionPair> four;
  for (auto [a, b] : {std::pair{1, 2}, {3, 5}, {-1, 4}, {2, -3}}) {
    four.push_back(ConditionPair{gh("g - " + std::to_string(a)).primitive_part(),
                                 gh("h - " + std::to_string(b)).primitive_part(),
                                 std::nullopt});
  }
  CHECK(quadratic_ansatz(four, gh_vars()).size() == 2);

  // empty condition list: the full 6-dimensional space
  CHECK(quadratic_ansatz({}, gh_vars()).size() == 6);
}
