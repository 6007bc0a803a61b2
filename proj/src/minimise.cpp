#include "conicmin/minimise.hpp"

#include "conicmin/poly_gcd.hpp"

#include <algorithm>
#include <climits>

namespace conicmin {

namespace {

MultiPoly pi_as_poly(const PrimeElement& pi, const VarList& vars) {
  return pi.kind() == PrimeElement::Kind::RationalPrime
             ? MultiPoly::constant(vars, pi.prime())
             : pi.poly().with_vars(vars);
}

int vpi_delta(const Conic& L, const PrimeElement& pi) { return valuation_at(L.delta(), pi); }

}  // namespace

MinimiseResult minimise_at_pi(const Conic& L, const PrimeElement& pi) {
  check_deadline();
  const VarList& vars = L.vars();
  const MultiPoly pival = pi_as_poly(pi, vars);
  const RationalFunction one = RationalFunction::one(vars);

  const int v_before = vpi_delta(L, pi);
  if (v_before < 2)
    throw ConicError("minimise_at_pi: pi^2 does not divide the discriminant");
  const int ds_before = degree_stats(L).deg_score;

  SingularLocus sing = singular_locus_mod(L, pi);
  if (sing.kind == SingularLocus::Kind::Nonsingular)
    throw ConicError("minimise_at_pi: nonsingular reduction at " + pi.str());

  TransformLog log;
  Conic cur = L;
  auto apply = [&](const std::string& label, const Mat3& u, const RationalFunction& sc) {
    Conic next = transform(cur, u, sc);
    log.append(make_transform_step(label, u, sc, next));
    cur = next;
  };

  if (sing.kind == SingularLocus::Kind::Point) {
    Mat3 u = lift_point_transform(sing.vec, pi);
    apply("min_point move, pi=" + pi.str(), u, one);
    // Z -> Z/pi as diag(pi, pi, 1) with scalar 1/pi^2
    Mat3 v = Mat3::diag(pival, pival, MultiPoly::constant(vars, 1));
    apply("min_point blow-up, pi=" + pi.str(), v,
          RationalFunction(MultiPoly::constant(vars, 1), pival * pival));
  } else {
    Mat3 u = lift_line_transform(sing.vec, pi);
    apply("min_line move, pi=" + pi.str(), u, one);
    Mat3 v = Mat3::diag(MultiPoly::constant(vars, 1), MultiPoly::constant(vars, 1), pival);
    apply("min_line scale Z, pi=" + pi.str(), v, one);
    int k = INT_MAX;
    for (size_t i = 0; i < 6; ++i)
      if (!cur.coeffs()[i].is_zero()) k = std::min(k, valuation_at(cur.coeffs()[i], pi));
    MultiPoly pik = MultiPoly::constant(vars, 1);
    for (int i = 0; i < k; ++i) pik = pik * pival;
    apply("min_line divide pi^" + std::to_string(k) + ", pi=" + pi.str(),
          Mat3::identity(vars), RationalFunction(MultiPoly::constant(vars, 1), pik));
  }

  MinimiseResult out{cur, std::move(log),
                     MinimiseStats{v_before, vpi_delta(cur, pi), ds_before,
                                   degree_stats(cur).deg_score}};
  return out;
}

std::optional<MinimiseResult> minimise_at_pi_permuted(const Conic& L, const PrimeElement& pi) {
  std::optional<MinimiseResult> best;
  // permutations enumerate in lexicographic order, so keeping only
  // strict improvements makes the smallest permutation win ties
  for (const auto& pc : best_permutation(L)) {
    try {
      MinimiseResult step = minimise_at_pi(pc.conic, pi);
      auto [msc, mlog] = scale_minimise(step.conic);
      TransformLog log;
      log.append(make_transform_step("permute", pc.matrix,
                                     RationalFunction::one(L.vars()), pc.conic));
      log.append(step.log);
      log.append(mlog);
      MinimiseStats stats = step.stats;
      stats.degscore_after = degree_stats(msc).deg_score;
      stats.vpi_after = vpi_delta(msc, pi);
      if (!best || stats.degscore_after < best->stats.degscore_after)
        best = MinimiseResult{std::move(msc), std::move(log), stats};
    } catch (const ConicError&) {
      continue;
    } catch (const FactorBudgetError&) {
      continue;
    }
  }
  return best;
}

MinimiseResult rational_minimisation(const Conic& L, FactorBudget& budget) {
  auto [start, slog] = scale_minimise(L);
  MinimiseResult out{std::move(start), std::move(slog), {}};
  out.stats.degscore_before = degree_stats(L).deg_score;

  auto content_of = [](const Conic& c) { return delta_split(c).content; };

  // odd primes of the initial content, largest first
  Int c0 = content_of(out.conic);
  std::vector<Int> primes;
  for (const auto& [p, e] : factor_integer(c0, budget))
    if (p != 2) primes.push_back(p);
  std::sort(primes.rbegin(), primes.rend());

  for (const Int& p : primes) {
    PrimeElement pe = PrimeElement::rational(p);
    while (true) {
      check_deadline();
      Int cur_content = content_of(out.conic);
      int v = 0;
      Int t = cur_content;
      while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
        t /= p;
        ++v;
      }
      if (v < 2) break;
      auto attempt = minimise_at_pi_permuted(out.conic, pe);
      if (!attempt) break;
      const int dd_before = degree_stats(out.conic).diag_deg;
      const int dd_after = degree_stats(attempt->conic).diag_deg;
      if (abs(content_of(attempt->conic)) < abs(cur_content) && dd_after <= dd_before) {
        out.log.append(attempt->log);
        out.conic = attempt->conic;
      } else {
        break;
      }
    }
  }
  out.stats.degscore_after = degree_stats(out.conic).deg_score;
  return out;
}

MinimiseResult rational_minimisation(const Conic& L) {
  FactorBudget b;
  return rational_minimisation(L, b);
}

MinimiseResult degree_minimisation(const Conic& L) {
  if (L.vars().size() != 2)
    throw ConicError("degree_minimisation needs a two-variable ring");
  MinimiseResult out{L, {}, {}};
  out.stats.degscore_before = degree_stats(L).deg_score;

  struct Candidate {
    Conic conic;
    TransformLog log;
    int diag;
  };
  std::vector<Candidate> candidates;
  candidates.push_back({L, TransformLog{}, degree_stats(L).diag_deg});

  for (int i = 0; i < 2; ++i) {
    PrimeElement ti = PrimeElement::polynomial(
        MultiPoly::variable(L.vars(), L.vars()[(size_t)i]), /*certify=*/false);
    auto [Li, swap_log] = swap_affine_patch(L, i);
    TransformLog log = swap_log;
    while (true) {
      check_deadline();
      auto split = delta_split(Li);
      if (!split.delta2.divisible_by(ti.poly())) break;
      auto attempt = minimise_at_pi_permuted(Li, ti);
      if (!attempt) break;
      if (degree_stats(attempt->conic).diag_deg <= degree_stats(Li).diag_deg) {
        log.append(attempt->log);
        Li = attempt->conic;
      } else {
        break;
      }
    }
    auto [back, back_log] = swap_affine_patch(Li, i);
    log.append(back_log);
    candidates.push_back({back, std::move(log), degree_stats(back).diag_deg});
  }

  // first of (L, L1, L2) minimising diag deg
  size_t best = 0;
  for (size_t i = 1; i < candidates.size(); ++i)
    if (candidates[i].diag < candidates[best].diag) best = i;
  out.conic = candidates[best].conic;
  out.log = std::move(candidates[best].log);
  out.stats.degscore_after = degree_stats(out.conic).deg_score;
  return out;
}

MinimiseResult polynomial_minimisation(const Conic& L, const PrimeElement& pi) {
  MinimiseResult out{L, {}, {}};
  out.stats.degscore_before = degree_stats(L).deg_score;
  out.stats.vpi_before = vpi_delta(L, pi);
  auto attempt = minimise_at_pi_permuted(L, pi);
  if (attempt && attempt->stats.degscore_after <= out.stats.degscore_before) {
    out.conic = attempt->conic;
    out.log = attempt->log;
  }
  out.stats.degscore_after = degree_stats(out.conic).deg_score;
  out.stats.vpi_after = vpi_delta(out.conic, pi);
  return out;
}

Conic verify_log(const Conic& source, const TransformLog& log) {
  Conic cur = source;
  for (size_t i = 0; i < log.steps().size(); ++i) {
    const TransformStep& s = log.steps()[i];
    try {
      cur = apply_step(cur, s);
    } catch (const std::exception& e) {
      throw ReplayError("replay failed at step " + std::to_string(i + 1) + " (" + s.label +
                            "): " + e.what(),
                        i + 1);
    }
    if (!s.digest.empty() && conic_digest(cur) != s.digest)
      throw ReplayError("replay mismatch at step " + std::to_string(i + 1) + " (" + s.label +
                            ")",
                        i + 1);
  }
  return cur;
}

}  // namespace conicmin
