// Factorization into irreducibles over the rationals: integers,
// univariate and bivariate polynomials (the pipeline's working ring).
#pragma once

#include "conicmin/multipoly.hpp"

namespace conicmin {

// Raised when the configured work budget is exhausted; carries the part
// that was not factored.
struct FactorBudgetError : std::runtime_error {
  FactorBudgetError(const std::string& what, MultiPoly part)
      : std::runtime_error(what), unfactored(std::move(part)) {}
  MultiPoly unfactored;
};

struct Factorization {
  int unit = 1;  // +1 or -1
  std::vector<std::pair<Int, int>> content_factors;        // ascending primes
  std::vector<std::pair<MultiPoly, int>> poly_factors;     // primitive, positive lead

  MultiPoly expand(const VarList& vars) const;
};

// Work budget shared by the factorization routines; counts elementary
// steps (division attempts, rho iterations, subset tests).
struct FactorBudget {
  long long units = 50'000'000;
  void spend(long long n, const MultiPoly& at);
};

// Complete prime factorization of |n|, n != 0.  Trial division plus a
// Pollard rho stage; inputs beyond the budget raise FactorBudgetError.
std::vector<std::pair<Int, int>> factor_integer(const Int& n);
std::vector<std::pair<Int, int>> factor_integer(const Int& n, FactorBudget& budget);

// Irreducible factorization over Q of a nonzero polynomial in one
// variable (which may live in a larger ring with all other exponents 0).
Factorization factor_univariate(const MultiPoly& f);
Factorization factor_univariate(const MultiPoly& f, FactorBudget& budget);

// Irreducible factorization over Q of a nonzero polynomial in at most
// two variables.
Factorization factor_bivariate(const MultiPoly& f);
Factorization factor_bivariate(const MultiPoly& f, FactorBudget& budget);

bool is_probable_prime(const Int& n);

}  // namespace conicmin
