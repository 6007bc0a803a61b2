// The four minimisation passes: blow-up at a prime, the rational-prime
// sweep, degree minimisation at infinity, single polynomial-prime
// minimisation, plus transformation-log replay verification.
#pragma once

#include "conicmin/conic.hpp"
#include "conicmin/deadline.hpp"
#include "conicmin/modular.hpp"

namespace conicmin {

struct ReplayError : std::runtime_error {
  ReplayError(const std::string& what, size_t step) : std::runtime_error(what), step(step) {}
  size_t step;
};


struct MinimiseStats {
  int vpi_before = 0, vpi_after = 0;
  int degscore_before = 0, degscore_after = 0;
};

struct MinimiseResult {
  Conic conic;
  TransformLog log;
  MinimiseStats stats;
};

// One blow-up step at pi (point branch: move the singular point to
// (0:0:1), substitute Z -> Z/pi; line branch: move the double line to
// {Z = 0}, substitute Z -> pi Z, divide by pi^k).  Requires pi^2 | delta
// and a conic that is scale minimal at pi.
MinimiseResult minimise_at_pi(const Conic& L, const PrimeElement& pi);

// Sweep over the odd primes of the rational content, largest first;
// steps are accepted while |content| strictly decreases and the diagonal
// degree does not grow.
MinimiseResult rational_minimisation(const Conic& L);
MinimiseResult rational_minimisation(const Conic& L, FactorBudget& budget);

// Minimise at the place at infinity in both affine patches; keeps the
// first of (L, L1, L2) minimising the diagonal degree.
MinimiseResult degree_minimisation(const Conic& L);

// One attempt at an irreducible pi, accepted only if the degree score
// does not increase.
MinimiseResult polynomial_minimisation(const Conic& L, const PrimeElement& pi);

// Replays a log from `source`, checking each recorded digest; returns
// the final conic or throws ReplayError naming the failing step.
Conic verify_log(const Conic& source, const TransformLog& log);

// Remark 5.4(1) helper: run minimise_at_pi on every permutation of L
// with non-decreasing diagonal degrees, re-scale-minimise, keep the
// lexicographically smallest permutation among those of minimal degree
// score.  Empty result when every attempt fails.
std::optional<MinimiseResult> minimise_at_pi_permuted(const Conic& L, const PrimeElement& pi);

}  // namespace conicmin
