#include "conicmin/search.hpp"

#include "conicmin/poly_gcd.hpp"

#include <atomic>
#include <chrono>
#include <deque>
#include <ostream>
#include <random>
#include <thread>
#include <unordered_set>

namespace conicmin {

std::string score_kind_name(ScoreKind k) {
  switch (k) {
    case ScoreKind::AverageSlope: return "slope";
    case ScoreKind::PenalisedNode: return "node";
    case ScoreKind::Alternating: return "alternating";
  }
  return "?";
}

std::optional<ScoreKind> score_kind_from_name(const std::string& s) {
  if (s == "slope") return ScoreKind::AverageSlope;
  if (s == "node") return ScoreKind::PenalisedNode;
  if (s == "alternating") return ScoreKind::Alternating;
  return std::nullopt;
}

int node_score(const Conic& L, FactorBudget& budget) {
  auto split = delta_split(L);
  int primes = 0;
  if (split.odd_content > 1) primes = (int)factor_integer(split.odd_content, budget).size();
  return degree_stats(L).deg_score + primes;
}

int node_score(const Conic& L) {
  FactorBudget b;
  return node_score(L, b);
}

Rat path_score(const ScoredNode& node, ScoreKind kind, long long step_index) {
  switch (kind) {
    case ScoreKind::AverageSlope: {
      Rat s(node.node_score - node.root_score, node.depth + 1);
      s.canonicalize();
      return s;
    }
    case ScoreKind::PenalisedNode: {
      Rat penalty(Int(node.equal_score_ancestors) * Int(node.equal_score_ancestors), 4);
      penalty.canonicalize();
      return Rat(node.node_score) + penalty;
    }
    case ScoreKind::Alternating:
      return path_score(node, step_index % 2 == 0 ? ScoreKind::AverageSlope
                                                  : ScoreKind::PenalisedNode,
                        step_index);
  }
  return Rat(0);
}

std::string canonical_key(const Conic& L) {
  Conic m = scale_minimise(L).first;
  std::array<MultiPoly, 6> c = m.coeffs();
  for (const auto& p : c) {
    if (p.is_zero()) continue;
    if (p.leading_coeff() < 0)
      for (auto& q : c) q = -q;
    break;
  }
  std::string key;
  for (const auto& v : m.vars()) key += v + ",";
  key += ";";
  for (const auto& p : c) key += p.str() + "|";
  return key;
}

namespace {

struct Node {
  Conic conic;
  std::string key;
  ScoredNode scored;
  int deg_score = 0;
  size_t parent = SIZE_MAX;
  TransformLog log_from_root;
};

struct ChildResult {
  bool ok = false;
  std::string why_dead;
  std::optional<Conic> conic;
  TransformLog log;
  int ord_before = 0, ord_after = 0;
};

Rat parse_prob(const Rat& p) {
  Rat q = p;
  q.canonicalize();
  return q;
}

}  // namespace

SearchOutcome minimisation_search(const Conic& L0, const SearchConfig& config,
                                  std::ostream* transcript) {
  using Clock = std::chrono::steady_clock;
  const auto t_start = Clock::now();
  const Rat prob = parse_prob(config.random_prob);
  std::mt19937_64 rng(config.seed);

  // random threshold: draw < floor(prob * 2^64)
  Int threshold;
  {
    Int num(prob.get_num()), den(prob.get_den());
    Int shifted = num << 64;
    threshold = shifted / den;
  }
  auto draw_random = [&]() {
    uint64_t u = rng();
    if (threshold == 0) return false;
    Int uu;
    mpz_import(uu.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
    return uu < threshold;
  };

  if (transcript) {
    *transcript << "transcript v1\n"
                << "score=" << score_kind_name(config.score_kind)
                << " random_prob=" << prob.get_str() << " seed=" << config.seed
                << " interleave=" << (config.interleave ? 1 : 0)
                << " max_steps=" << config.max_steps << "\n";
  }

  std::deque<Node> arena;
  std::vector<size_t> queue;
  std::unordered_set<std::string> visited;

  auto make_budget = [&]() {
    FactorBudget b;
    b.units = config.factor_budget;
    return b;
  };

  std::string fail_reason;
  size_t best_idx = SIZE_MAX;

  auto consider_best = [&](size_t idx) {
    if (best_idx == SIZE_MAX) {
      best_idx = idx;
      return;
    }
    const Node& a = arena[idx];
    const Node& b = arena[best_idx];
    if (std::tuple(a.deg_score, a.scored.node_score) <
        std::tuple(b.deg_score, b.scored.node_score))
      best_idx = idx;
  };

  // root: scale minimal form of the input
  auto [root_conic, root_log] = scale_minimise(L0);
  int root_ns;
  {
    try {
      FactorBudget b = make_budget();
      root_ns = node_score(root_conic, b);
    } catch (const FactorBudgetError&) {
      return SearchOutcome{false, "factor budget exceeded on the input", L0, {}, {}};
    }
  }
  {
    Node root{root_conic, canonical_key(root_conic),
              ScoredNode{root_ns, 0, 0, root_ns}, degree_stats(root_conic).deg_score,
              SIZE_MAX, root_log};
    visited.insert(root.key);
    arena.push_back(std::move(root));
    queue.push_back(0);
    consider_best(0);
  }

  auto push_child = [&](size_t parent, Conic conic, TransformLog log,
                        const char* action) -> std::optional<size_t> {
    std::string key = canonical_key(conic);
    if (visited.count(key)) return std::nullopt;
    int ns;
    try {
      FactorBudget b = make_budget();
      ns = node_score(conic, b);
    } catch (const FactorBudgetError&) {
      if (transcript) *transcript << "  drop action=" << action << " reason=budget\n";
      return std::nullopt;
    }
    visited.insert(key);
    Node n{std::move(conic), std::move(key), ScoredNode{}, 0, parent, {}};
    n.scored.node_score = ns;
    n.scored.depth = arena[parent].scored.depth + 1;
    n.scored.root_score = arena[parent].scored.root_score;
    n.scored.equal_score_ancestors = 0;
    for (size_t a = parent; a != SIZE_MAX; a = arena[a].parent)
      if (arena[a].scored.node_score == ns) ++n.scored.equal_score_ancestors;
    n.deg_score = degree_stats(n.conic).deg_score;
    n.log_from_root = arena[parent].log_from_root;
    n.log_from_root.append(log);
    arena.push_back(std::move(n));
    queue.push_back(arena.size() - 1);
    consider_best(arena.size() - 1);
    return arena.size() - 1;
  };

  long long step = 0;
  while (true) {
    // success: any queued conic with degree score 0
    for (size_t idx : queue) {
      if (arena[idx].deg_score == 0) {
        const Node& n = arena[idx];
        if (transcript)
          *transcript << "success digest=" << conic_digest(n.conic)
                      << " depth=" << n.scored.depth << " steps=" << step << "\n";
        return SearchOutcome{true, "", n.conic, n.log_from_root,
                             SearchStats{step, n.scored.depth}};
      }
    }
    if (queue.empty()) {
      // a tripped global deadline may have starved the queue
      fail_reason = (config.timeout_seconds > 0 &&
                     std::chrono::duration<double>(Clock::now() - t_start).count() >
                         config.timeout_seconds)
                        ? "timeout"
                        : "queue exhausted";
      break;
    }
    if (step >= config.max_steps) {
      fail_reason = "max steps reached";
      break;
    }
    if (config.timeout_seconds > 0 &&
        std::chrono::duration<double>(Clock::now() - t_start).count() >
            config.timeout_seconds) {
      fail_reason = "timeout";
      break;
    }
    ++step;

    // arm the cooperative deadline: the tighter of the per-step cap and
    // the remaining global budget
    auto arm_deadline = [&]() {
      double arm = config.step_timeout_seconds > 0 ? config.step_timeout_seconds : 0;
      if (config.timeout_seconds > 0) {
        double remaining =
            config.timeout_seconds -
            std::chrono::duration<double>(Clock::now() - t_start).count();
        if (remaining < 0) remaining = 0;
        arm = arm > 0 ? std::min(arm, remaining) : remaining;
      }
      if (arm > 0)
        set_step_deadline(arm);
      else if (config.step_timeout_seconds > 0 || config.timeout_seconds > 0)
        set_step_deadline(0);
    };

    // pick: random leaf with probability random_prob, else minimal path score
    size_t pick_pos = 0;
    bool random_pick = draw_random();
    if (random_pick) {
      pick_pos = (size_t)(rng() % queue.size());
    } else {
      Rat best_score;
      bool first = true;
      for (size_t i = 0; i < queue.size(); ++i) {
        Rat s = path_score(arena[queue[i]].scored, config.score_kind, step);
        if (first || s < best_score) {
          best_score = s;
          pick_pos = i;
          first = false;
        }
      }
    }
    const size_t cur = queue[pick_pos];
    queue.erase(queue.begin() + (long)pick_pos);
    if (transcript) {
      *transcript << "step=" << step << " pop=" << conic_digest(arena[cur].conic)
                  << " depth=" << arena[cur].scored.depth
                  << " ns=" << arena[cur].scored.node_score
                  << " ds=" << arena[cur].deg_score
                  << " mode=" << (random_pick ? "random" : "best") << "\n";
    }

    // rational then degree minimisation
    Conic work = arena[cur].conic;
    TransformLog work_log;
    try {
      arm_deadline();
      FactorBudget b = make_budget();
      MinimiseResult r1 = rational_minimisation(work, b);
      MinimiseResult r2 = degree_minimisation(r1.conic);
      clear_step_deadline();
      work = r2.conic;
      work_log = r1.log;
      work_log.append(r2.log);
    } catch (const FactorBudgetError&) {
      clear_step_deadline();
      if (transcript) *transcript << "  dead reason=budget\n";
      continue;
    } catch (const StepTimeoutError&) {
      clear_step_deadline();
      if (transcript) *transcript << "  dead reason=step-timeout\n";
      continue;
    }

    std::string work_key = canonical_key(work);
    if (!visited.count(work_key)) {
      auto idx = push_child(cur, work, work_log, "requeue");
      if (transcript && idx)
        *transcript << "  requeue new=" << conic_digest(arena[*idx].conic)
                    << " ns=" << arena[*idx].scored.node_score
                    << " ds=" << arena[*idx].deg_score << "\n";
      continue;
    }

    // expand: one polynomial-minimisation child per irreducible pi | Delta_2
    std::vector<MultiPoly> pis;
    try {
      FactorBudget b = make_budget();
      DeltaParts parts = delta_parts(work, b);
      for (const auto& [pi, e] : parts.factors.poly_factors) pis.push_back(pi);
    } catch (const FactorBudgetError&) {
      if (transcript) *transcript << "  dead reason=budget\n";
      continue;
    }
    if (transcript) *transcript << "  expand children=" << pis.size() << "\n";

    std::vector<ChildResult> results(pis.size());
    auto eval_child = [&](size_t i) {
      ChildResult& r = results[i];
      try {
        arm_deadline();
        PrimeElement pe = PrimeElement::polynomial(pis[i], /*certify=*/false);
        r.ord_before = valuation_at(work.delta(), pe);
        MinimiseResult pm = polynomial_minimisation(work, pe);
        Conic child = pm.conic;
        TransformLog clog = pm.log;
        if (config.interleave) {
          FactorBudget b = make_budget();
          MinimiseResult i1 = rational_minimisation(child, b);
          MinimiseResult i2 = degree_minimisation(i1.conic);
          child = i2.conic;
          clog.append(i1.log);
          clog.append(i2.log);
        }
        r.ord_after = valuation_at(pm.conic.delta(), pe);
        r.conic = std::move(child);
        r.log = std::move(clog);
        r.ok = true;
      } catch (const FactorBudgetError&) {
        r.why_dead = "budget";
      } catch (const StepTimeoutError&) {
        r.why_dead = "step-timeout";
      } catch (const ConicError& e) {
        r.why_dead = e.what();
      }
      clear_step_deadline();
    };

    const int jobs = std::max(1, config.jobs);
    if (jobs == 1 || pis.size() <= 1) {
      for (size_t i = 0; i < pis.size(); ++i) eval_child(i);
    } else {
      std::atomic<size_t> next{0};
      std::vector<std::thread> pool;
      const size_t nthreads = std::min((size_t)jobs, pis.size());
      for (size_t t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
          while (true) {
            size_t i = next.fetch_add(1);
            if (i >= results.size()) return;
            eval_child(i);
          }
        });
      for (auto& th : pool) th.join();
    }

    for (size_t i = 0; i < pis.size(); ++i) {
      const ChildResult& r = results[i];
      if (!r.ok) {
        if (transcript)
          *transcript << "  child pi=" << pis[i].str() << " dead=" << r.why_dead << "\n";
        continue;
      }
      const bool drops = r.ord_after < r.ord_before;
      std::optional<size_t> idx;
      if (drops) idx = push_child(cur, *r.conic, r.log, "child");
      if (transcript)
        *transcript << "  child pi=" << pis[i].str() << " ord=" << r.ord_before << "->"
                    << r.ord_after << " pushed=" << (idx ? 1 : 0)
                    << (idx ? " digest=" + conic_digest(arena[*idx].conic) : std::string())
                    << "\n";
    }
  }

  if (transcript) *transcript << "fail reason=" << fail_reason << " steps=" << step << "\n";
  const Node& b = arena[best_idx == SIZE_MAX ? 0 : best_idx];
  return SearchOutcome{false, fail_reason, b.conic, b.log_from_root,
                       SearchStats{step, b.scored.depth}};
}

}  // namespace conicmin
