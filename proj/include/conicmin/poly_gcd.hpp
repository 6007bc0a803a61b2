// Gcd, resultants and squarefree decomposition for MultiPoly.
#pragma once

#include "conicmin/multipoly.hpp"

namespace conicmin {

// Gcd including integer content, normalized to a positive grevlex
// leading coefficient.  gcd(f, 0) = normalized f; gcd(0, 0) = 0.
MultiPoly poly_gcd(const MultiPoly& f, const MultiPoly& g);

// Positive-leading-coefficient normalization (sign flip only).
MultiPoly normalize_sign(const MultiPoly& f);

// (positive integer content, primitive part with sign retained).
// Throws on zero input.
std::pair<Int, MultiPoly> content_and_primitive(const MultiPoly& f);

// Sylvester resultant eliminating `var`; Res_x(x-a, x-b) = a-b.
// Throws on zero input.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, size_t var);

// f = unit * prod A_i^i with the A_i squarefree, pairwise coprime and
// primitive; returned as (A_i, i) with multiplicities ascending,
// constants omitted.  Requires f nonzero and integer-primitive.
std::vector<std::pair<MultiPoly, int>> squarefree_decomposition(const MultiPoly& f);

// Largest s (up to sign, content 1) with s^2 | f, from the squarefree
// decomposition; the "squarish part" used by the scaling rules.
MultiPoly square_divisor_part(const MultiPoly& f);

// True iff f is a square in Q[vars] up to a positive rational square,
// i.e. unit +1, square content and even multiplicities.
bool is_perfect_square(const MultiPoly& f);

}  // namespace conicmin
