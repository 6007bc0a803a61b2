// Best-first minimisation search: scoring, canonical keys, visited set,
// seeded randomization, deterministic transcripts.
#pragma once

#include "conicmin/minimise.hpp"

#include <iosfwd>

namespace conicmin {

enum class ScoreKind { AverageSlope, PenalisedNode, Alternating };

std::string score_kind_name(ScoreKind k);
std::optional<ScoreKind> score_kind_from_name(const std::string& s);

struct SearchConfig {
  ScoreKind score_kind = ScoreKind::AverageSlope;
  Rat random_prob = Rat(0);      // in [0, 1]
  uint64_t seed = 0;
  long long max_steps = 100000;
  double timeout_seconds = 0;    // 0: none
  bool interleave = false;       // rational+degree pass after each child
  long long factor_budget = 50'000'000;  // work units per minimisation call
  int jobs = 1;
  double step_timeout_seconds = 0;  // 0: off (per-minimisation-call deadline)
};

// Degree score plus the number of odd primes dividing the odd part of
// the discriminant's content.
int node_score(const Conic& L);
int node_score(const Conic& L, FactorBudget& budget);

struct ScoredNode {
  int node_score = 0;
  int depth = 0;                  // root = 0
  int equal_score_ancestors = 0;  // strict ancestors with the same score
  int root_score = 0;
};

// AverageSlope: (score - root) / (nodes on the root path, both ends
// counted).  PenalisedNode: score + n^2/4.  Alternating: slope on even
// global step counts, penalised on odd.
Rat path_score(const ScoredNode& node, ScoreKind kind, long long step_index);

// Serialization of the scale-minimal, content- and sign-normalized form
// with fixed variable and monomial order.
std::string canonical_key(const Conic& L);

struct SearchStats {
  long long steps = 0;
  int depth = 0;
};

struct SearchOutcome {
  bool success = false;
  std::string fail_reason;  // set on failure
  Conic conic;              // minimal model, or best seen on failure
  TransformLog log;         // replayable from the search input
  SearchStats stats;
};

// Algorithm: repeatedly pop the best-scored (or random) queue entry,
// apply rational and degree minimisation, requeue unseen results, and
// otherwise expand one polynomial-minimisation child per irreducible
// factor of the power-full discriminant part.  Success as soon as a
// queued conic has degree score 0.
SearchOutcome minimisation_search(const Conic& L0, const SearchConfig& config,
                                  std::ostream* transcript = nullptr);

}  // namespace conicmin
