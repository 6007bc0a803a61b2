// Ternary quadratic forms a X^2 + b Y^2 + c Z^2 + d XY + e XZ + f YZ
// over Z[vars], their statistics, and replayable transformation logs.
// The doubled Gram matrix 2G is stored implicitly through the six
// coefficients, so everything stays integral; the discriminant is
// det(2G) = 8 det(G).
#pragma once

#include "conicmin/factor.hpp"
#include "conicmin/multipoly.hpp"
#include "conicmin/rational_function.hpp"

#include <array>

namespace conicmin {

struct ConicError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Mat3 {
  std::array<MultiPoly, 9> m;

  static Mat3 identity(const VarList& vars);
  static Mat3 zero(const VarList& vars);
  static Mat3 from_columns(const std::array<std::array<MultiPoly, 3>, 3>& cols);
  static Mat3 diag(MultiPoly a, MultiPoly b, MultiPoly c);
  static Mat3 permutation(const VarList& vars, const std::array<int, 3>& perm);

  MultiPoly& at(int r, int c) { return m[(size_t)(3 * r + c)]; }
  const MultiPoly& at(int r, int c) const { return m[(size_t)(3 * r + c)]; }

  Mat3 operator*(const Mat3& o) const;
  Mat3 transpose() const;
  MultiPoly det() const;
  Mat3 adjugate() const;
  bool operator==(const Mat3& o) const { return m == o.m; }
};

class Conic {
 public:
  // coefficients (a, b, c, d, e, f); throws unless delta != 0
  Conic(VarList vars, std::array<MultiPoly, 6> coeffs);
  static Conic diagonal(const VarList& vars, MultiPoly a, MultiPoly b, MultiPoly c);

  const VarList& vars() const { return vars_; }
  const std::array<MultiPoly, 6>& coeffs() const { return c_; }
  const MultiPoly& a() const { return c_[0]; }
  const MultiPoly& b() const { return c_[1]; }
  const MultiPoly& c() const { return c_[2]; }
  const MultiPoly& d() const { return c_[3]; }
  const MultiPoly& e() const { return c_[4]; }
  const MultiPoly& f() const { return c_[5]; }

  const MultiPoly& delta() const { return delta_; }  // det(2G)
  Mat3 doubled_gram() const;
  MultiPoly eval(const MultiPoly& x, const MultiPoly& y, const MultiPoly& z) const;

  bool operator==(const Conic& o) const { return vars_ == o.vars_ && c_ == o.c_; }
  bool operator!=(const Conic& o) const { return !(*this == o); }

  std::string str() const;

 private:
  VarList vars_;
  std::array<MultiPoly, 6> c_;
  MultiPoly delta_;
};

// ----------------------------------------------------------------- log

enum class StepKind { Transform, PatchSwap };

struct TransformStep {
  StepKind kind = StepKind::Transform;
  std::string label;
  Mat3 u;                    // ignored for PatchSwap
  RationalFunction scalar;   // ignored for PatchSwap
  int patch_var = 0;         // PatchSwap only: variable index 0 or 1
  std::string digest;        // hash of the resulting conic
};

class TransformLog {
 public:
  const std::vector<TransformStep>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }
  size_t size() const { return steps_.size(); }
  void append(TransformStep s) { steps_.push_back(std::move(s)); }
  void append(const TransformLog& other);

 private:
  std::vector<TransformStep> steps_;
};

// 2G' = scalar * U^T (2G) U; throws ConicError when the result fails to
// clear to integral coefficients or the transform is singular.
Conic transform(const Conic& L, const Mat3& u, const RationalFunction& scalar);

// Deterministic content hash of the conic (used for step digests,
// transcripts and the visited set).
std::string conic_digest(const Conic& L);

// Applies one recorded step (transform or patch swap).
Conic apply_step(const Conic& L, const TransformStep& s);

// Raw affine-patch swap: homogenize the six coefficients to their
// common maximum total degree, exchange t_i with the homogenizing
// variable, dehomogenize.  Two-variable rings only.
Conic raw_patch_swap(const Conic& L, int var_index);

// Helpers used below to build logged steps.
TransformStep make_transform_step(std::string label, Mat3 u, RationalFunction scalar,
                                  const Conic& result);
TransformStep make_patch_swap_step(int var_index, const Conic& result);

// ----------------------------------------------------------- statistics

// Content/squarefree/power-full split of the discriminant; no
// factorization involved.
struct DeltaSplit {
  MultiPoly delta;
  Int content;      // positive integer content of delta
  Int odd_content;  // content with all factors of 2 removed
  int sign;         // sign of the primitive part's leading coefficient
  MultiPoly delta1;  // squarefree part (multiplicity-1 primes)
  MultiPoly delta2;  // power-full part
};
DeltaSplit delta_split(const Conic& L);

// DeltaSplit plus the irreducible factors of delta2.
struct DeltaParts {
  DeltaSplit split;
  Factorization factors;  // of delta2
};
DeltaParts delta_parts(const Conic& L);
DeltaParts delta_parts(const Conic& L, FactorBudget& budget);

struct DegreeStats {
  int diag_deg;
  int deg_score;
};
DegreeStats degree_stats(const Conic& L);

// All variable permutations with non-decreasing diagonal degrees, each
// with its permutation (new index -> old index) and matrix.
struct PermutedConic {
  Conic conic;
  std::array<int, 3> perm;
  Mat3 matrix;
};
std::vector<PermutedConic> best_permutation(const Conic& L);

// Scaling-transformation fixpoint: content division, variable/pi
// division, pair scaling.  Returns the scale-minimal form and its log.
std::pair<Conic, TransformLog> scale_minimise(const Conic& L);

// Patch swap followed by scale minimisation (the paper's definition).
std::pair<Conic, TransformLog> swap_affine_patch(const Conic& L, int var_index);

// Completing-the-square diagonalisation; the returned triple are the
// diagonal entries of the final integral diagonal conic, whose log
// replays from L.  alpha*beta*gamma agrees with delta/8 up to squares.
struct DiagonalForm {
  RationalFunction alpha, beta, gamma;
  Conic conic;
  TransformLog log;
};
DiagonalForm diagonalise(const Conic& L);

// True iff a^2 - D*lambda*b^2 = f*s^2 for some nonzero s in Q(vars).
bool norm_certificate_check(const RationalFunction& f, const Int& D, const MultiPoly& lambda,
                            const RationalFunction& a, const RationalFunction& b);

// Bounded search for such a certificate: polynomials a, b with total
// degree <= max_deg and coefficients in [-max_coeff, max_coeff].
std::optional<std::pair<MultiPoly, MultiPoly>> find_norm_certificate(
    const RationalFunction& f, const Int& D, const MultiPoly& lambda, int max_deg,
    int max_coeff);

}  // namespace conicmin
