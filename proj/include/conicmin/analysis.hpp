// Diagnostics for plane curves over Q[g,h]: singular points by
// resultant elimination, factored resultant pairs, and interpolation of
// quadratics through prescribed conjugate point classes.  Also stores
// the lambda/q/p fixture polynomials used throughout.
#pragma once

#include "conicmin/factor.hpp"
#include "conicmin/multipoly.hpp"

namespace conicmin {

struct AnalysisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A conjugacy class of points: g satisfies g_condition, h satisfies
// h_condition; when the fibre over a root of g_condition depends on the
// choice of conjugate, `pairing` relates them (a bivariate witness whose
// roots over each g-root are the h-coordinates).
struct ConditionPair {
  MultiPoly g_condition;  // univariate in the first variable, irreducible
  MultiPoly h_condition;  // univariate in the second variable, squarefree
  std::optional<MultiPoly> pairing;
};

// Singular points of the affine plane curve f = 0 (f squarefree) as
// condition pairs; empty when the curve is smooth.
std::vector<ConditionPair> singular_points(const MultiPoly& f);

// Symbolic check that a condition pair annihilates f and both partials
// modulo its ideal.
bool condition_pair_annihilates(const ConditionPair& c, const MultiPoly& f);

// Basis of the space of quadratics c1 g^2 + c2 gh + c3 h^2 + c4 g +
// c5 h + c6 vanishing on every given class; primitive integral
// representatives.
std::vector<MultiPoly> quadratic_ansatz(const std::vector<ConditionPair>& conditions,
                                        const VarList& vars);

struct ResultantReport {
  MultiPoly res_g, res_h;
  Factorization res_g_factored, res_h_factored;
};
ResultantReport resultant_report(const MultiPoly& f, const MultiPoly& g);

// ------------------------------------------------------------- fixtures

const VarList& gh_vars();  // {"g", "h"}
const VarList& mn_vars();  // {"m", "n"}

const MultiPoly& lambda21_fixture();
const MultiPoly& q21_fixture();
const MultiPoly& lambda40_fixture();          // expanded
const MultiPoly& lambda40_factor1();          // g^2 - h^2 - 1
const MultiPoly& lambda40_factor2();          // the printed quartic
const MultiPoly& q40_candidate();             // -15 g^2 + 14 h^2 + 10 g + 5

// D -> q_D over (g, h); 14 entries
const std::vector<std::pair<int, MultiPoly>>& qd_table();
// D -> p_D over (m, n); 5 entries
const std::vector<std::pair<int, MultiPoly>>& pd_table();

}  // namespace conicmin
