// Acceptance suite: one pass/fail line per criterion.  Run with no
// arguments for the full suite, or with criterion numbers to select.
#include "conicmin/analysis.hpp"
#include "conicmin/conic_io.hpp"
#include "conicmin/mestre.hpp"
#include "conicmin/minimise.hpp"
#include "conicmin/poly_gcd.hpp"
#include "conicmin/poly_io.hpp"
#include "conicmin/search.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace conicmin;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::function<bool(std::string&)> run;
};

const VarList GH{"g", "h"};

MultiPoly gh(const std::string& s) { return parse_poly(s, GH); }

// ------------------------------------------------------------------ 1-2

bool c1_ic_chain(std::string& detail) {
  auto chain = ic_simplified();
  const VarList& V = ic_vars();
  std::array<const char*, 6> printed{
      "-3*I2^3 - 140*I2*I4 + 800*I6",
      "117*I2*I4^2 - 360*I4*I6 - 81000*I10",
      "-200*I2*I4^3 + 920*I4^2*I6 - 27*I2*I6^2 + 102600*I4*I10",
      "2*(7*I2^2*I4 + 80*I4^2 - 30*I2*I6)",
      "2*(-230*I2*I4^2 - 9*I2^2*I6 + 1040*I4*I6 + 108000*I10)",
      "2*(-50*I2^2*I4^2 + 20*I4^3 + 321*I2*I4*I6 - 540*I6^2 + 24300*I2*I10)"};
  for (size_t i = 0; i < 6; ++i) {
    if (chain.conic.coeffs()[i] != parse_poly(printed[i], V)) {
      detail = "entry " + std::to_string(i) + " differs";
      return false;
    }
  }
  if (verify_log(chain.source, chain.log) != chain.conic) {
    detail = "chain log does not replay";
    return false;
  }
  detail = std::to_string(chain.log.size()) + " chain steps replay";
  return true;
}

bool c2_rm_chain(std::string& detail) {
  auto chain = rm_simplified();
  const VarList& E = ek_vars();
  std::array<const char*, 6> printed{
      "-225*A1^3*B + 285*A*A1^2*B1 + 324*B1^3",
      "-60*A*A1*B + 4*A^2*B1 + 125*A1^2*B2",
      "180*A^2*A1*B - 525*A*A1^2*B2 + 81*B^2*B1",
      "2*(20*A^2*A1^2 - 45*A1*B*B1 + 36*A*B1^2)",
      "2*(90*A*A1^2*B + 30*A^2*A1*B1 - 375*A1^3*B2 + 162*B*B1^2)",
      "2*(20*A^3*A1 - 135*A1*B^2 + 18*A*B*B1 + 450*A1*B1*B2)"};
  for (size_t i = 0; i < 6; ++i) {
    if (chain.conic.coeffs()[i] != parse_poly(printed[i], E)) {
      detail = "entry " + std::to_string(i) + " differs";
      return false;
    }
  }
  // Q2(v2) identity is asserted inside the chain construction; check the
  // divisibility claims here
  MultiPoly a1 = MultiPoly::variable(E, "A1");
  if (!chain.conic.delta().divisible_by(a1 * a1)) {
    detail = "A1^2 does not divide the discriminant";
    return false;
  }
  auto minor4 = [&](const MultiPoly& x, const MultiPoly& y, const MultiPoly& cr) {
    return x * y * 4 - cr * cr;
  };
  const Conic& t3 = chain.conic;
  if (!minor4(t3.a(), t3.b(), t3.d()).divisible_by(a1) ||
      !minor4(t3.a(), t3.c(), t3.e()).divisible_by(a1) ||
      !minor4(t3.b(), t3.c(), t3.f()).divisible_by(a1)) {
    detail = "A1 does not divide a diagonal minor";
    return false;
  }
  if (verify_log(chain.source, chain.log) != chain.conic) {
    detail = "chain log does not replay";
    return false;
  }
  detail = "entries, Q2(v2), A1^2 | delta, minors";
  return true;
}

// ------------------------------------------------------------------ 3-6

bool c3_resultants(std::string& detail) {
  auto rep = resultant_report(lambda21_fixture(), q21_fixture());
  MultiPoly res_g_expected = gh("746496*(27*h^2 - 1)^2*(3*h^4 + 27*h^2 - 25)^2");
  MultiPoly res_h_expected = gh("64*(27*g^2 - 25)^2*(27*g^4 + 342*g^2 - 289)^2");
  if (rep.res_g != res_g_expected) {
    detail = "Res_g differs";
    return false;
  }
  if (rep.res_h != res_h_expected) {
    detail = "Res_h differs";
    return false;
  }
  // factored equality
  auto eq = [](const Factorization& f, int unit,
               const std::vector<std::pair<Int, int>>& content,
               const std::vector<std::pair<MultiPoly, int>>& polys) {
    return f.unit == unit && f.content_factors == content && f.poly_factors == polys;
  };
  if (!eq(rep.res_g_factored, 1, {{2, 10}, {3, 6}},
          {{gh("27*h^2 - 1"), 2}, {gh("3*h^4 + 27*h^2 - 25"), 2}})) {
    detail = "Res_g factorization differs";
    return false;
  }
  if (!eq(rep.res_h_factored, 1, {{2, 6}},
          {{gh("27*g^2 - 25"), 2}, {gh("27*g^4 + 342*g^2 - 289"), 2}})) {
    detail = "Res_h factorization differs";
    return false;
  }
  detail = "both resultants match in factored form";
  return true;
}

bool c4_singular_locus(std::string& detail) {
  auto classes = singular_points(lambda40_fixture());
  std::set<std::pair<std::string, std::string>> got, want{
      {"g - 8", "2*h^2 - 125"}, {"g - 9", "h^2 - 80"}, {"3*g + 1", "h"}};
  for (const auto& c : classes) {
    if (c.pairing) {
      detail = "unexpected pairing witness";
      return false;
    }
    got.insert({c.g_condition.str(), c.h_condition.str()});
    if (!condition_pair_annihilates(c, lambda40_fixture())) {
      detail = "class fails symbolic verification";
      return false;
    }
  }
  if (got != want) {
    detail = "classes differ";
    return false;
  }
  detail = "three classes, symbolically verified";
  return true;
}

bool c5_ansatz(std::string& detail) {
  auto classes = singular_points(lambda40_fixture());
  auto basis = quadratic_ansatz(classes, GH);
  if (basis.size() != 1) {
    detail = "dimension " + std::to_string(basis.size());
    return false;
  }
  if (basis[0] != q40_candidate() && basis[0] != -q40_candidate()) {
    detail = "span differs: " + basis[0].str();
    return false;
  }
  detail = "one-dimensional, spanned by the stored quadratic";
  return true;
}

bool c6_table1(std::string& detail) {
  auto q5 = factor_bivariate(gh("-900*g^2 - 390*g - 36"));
  bool ok5 = q5.unit == -1 &&
             q5.content_factors == std::vector<std::pair<Int, int>>{{2, 1}, {3, 1}} &&
             q5.poly_factors == std::vector<std::pair<MultiPoly, int>>{
                 {gh("10*g + 3"), 1}, {gh("15*g + 2"), 1}};
  auto q12 = factor_bivariate(gh("-(h - 1)*(3*h^3 + 9*h^2 - 27*g - 4*h - 8)"));
  bool ok12 = q12.unit == -1 && q12.content_factors.empty() &&
              q12.poly_factors == std::vector<std::pair<MultiPoly, int>>{
                  {gh("h - 1"), 1}, {gh("3*h^3 + 9*h^2 - 27*g - 4*h - 8"), 1}};
  if (!ok5) detail = "q_5 factorization differs";
  if (!ok12) detail += std::string(detail.empty() ? "" : "; ") + "q_12 factorization differs";
  if (ok5 && ok12) detail = "q_5 and q_12 recovered";
  return ok5 && ok12;
}

// ------------------------------------------------------------------- 7

struct Instance {
  Conic conic;
  uint64_t seed;
};

std::vector<Instance> criterion7_instances() {
  std::vector<MultiPoly> dets;
  for (const char* s : {"3", "5", "7", "11", "13", "g", "h", "g - h", "g + h", "g + h + 1"})
    dets.push_back(gh(s));
  std::vector<MultiPoly> scalars;
  for (const char* s : {"1", "1", "3", "5", "g", "h"}) scalars.push_back(gh(s));
  const long Ds[6] = {5, 8, 12, 13, 17, 21};

  std::vector<Instance> out;
  for (int inst = 0; inst < 100; ++inst) {
    std::mt19937_64 rng(0xC7000000u + (uint64_t)inst);
    std::uniform_int_distribution<int> coef(-5, 5);
    MultiPoly q(GH);
    while (true) {
      q = MultiPoly(GH);
      for (int d = 0; d <= 4; ++d)
        for (int i = 0; i <= d; ++i)
          if (rng() % 3 == 0) q.add_term({i, d - i}, coef(rng));
      if (q.is_zero()) continue;
      if (!poly_gcd(q, poly_gcd(q.derivative(0), q.derivative(1))).is_constant()) continue;
      break;
    }
    Conic L = Conic::diagonal(GH, MultiPoly::constant(GH, 1),
                              MultiPoly::constant(GH, -Ds[inst % 6]), -q);
    const int nbloat = (int)(rng() % 5);  // <= 4 transforms
    std::uniform_int_distribution<int> shear(1, 2);
    for (int b = 0; b < nbloat; ++b) {
      // product of elementary shears stays unimodular
      Mat3 u = Mat3::identity(GH);
      for (int k = 0; k < 2; ++k) {
        int i = (int)(rng() % 3), j = (int)(rng() % 3);
        if (i == j) continue;
        Mat3 e = Mat3::identity(GH);
        e.at(i, j) = MultiPoly::constant(GH, (rng() % 2 ? 1 : -1) * shear(rng));
        u = u * e;
      }
      u = u * Mat3::diag(MultiPoly::constant(GH, 1), MultiPoly::constant(GH, 1),
                         dets[rng() % dets.size()]);
      L = transform(L, u, RationalFunction::one(GH));
      L = transform(L, Mat3::identity(GH), RationalFunction(scalars[rng() % scalars.size()]));
    }
    out.push_back(Instance{L, (uint64_t)inst});
  }
  return out;
}

std::vector<std::string> run_criterion7_suite(int jobs, int* solved_out,
                                              std::string* why = nullptr) {
  auto instances = criterion7_instances();
  std::vector<std::string> transcripts;
  int solved = 0;
  for (const auto& inst : instances) {
    SearchConfig cfg;
    cfg.score_kind = ScoreKind::AverageSlope;
    cfg.random_prob = Rat(0);
    cfg.seed = inst.seed;
    cfg.max_steps = 10000;
    cfg.timeout_seconds = 120;
    cfg.jobs = jobs;
    std::ostringstream ts;
    SearchOutcome out = minimisation_search(inst.conic, cfg, &ts);
    transcripts.push_back(ts.str());
    if (out.success) {
      if (degree_stats(out.conic).deg_score != 0) {
        if (why) *why = "success with nonzero degree score";
        continue;
      }
      if (verify_log(inst.conic, out.log) != out.conic) {
        if (why) *why = "success log does not replay";
        continue;
      }
      ++solved;
    }
  }
  *solved_out = solved;
  return transcripts;
}

std::vector<std::string> g_c7_transcripts;  // reused by criterion 11

bool c7_round_trip(std::string& detail) {
  int solved = 0;
  std::string why;
  g_c7_transcripts = run_criterion7_suite(1, &solved, &why);
  detail = std::to_string(solved) + "/100 reach degree score 0";
  if (!why.empty()) detail += " (" + why + ")";
  return solved >= 90;
}

// ------------------------------------------------------------------- 8

bool c8_minimise_at_pi(std::string& detail) {
  const VarList T{"t1", "t2"};
  auto tp = [&](const std::string& s) { return parse_poly(s, T); };
  std::vector<PrimeElement> pis{
      PrimeElement::rational(3), PrimeElement::rational(7), PrimeElement::rational(13),
      PrimeElement::polynomial(tp("t1"), false),
      PrimeElement::polynomial(tp("t1 + 1"), false),
      PrimeElement::polynomial(tp("t1 + t2"), false),
      PrimeElement::polynomial(tp("t1^2 + t2^2 + 1"), false)};

  std::mt19937_64 rng(0xC8000001u);
  std::uniform_int_distribution<int> coef(-6, 6);
  long long done = 0, points = 0, lines1 = 0, lines2 = 0;
  while (done < 1000) {
    const PrimeElement& pi = pis[(size_t)(rng() % pis.size())];
    MultiPoly pv = pi.kind() == PrimeElement::Kind::RationalPrime
                       ? MultiPoly::constant(T, pi.prime())
                       : pi.poly();
    const int flavor = (int)(rng() % 3);
    std::optional<Conic> built;
    try {
      if (flavor == 0) {
        // point: nondegenerate base, Z-image (c1, c2, pi) so the scale
        // rules cannot strip the pi^2 from the discriminant
        Conic base(T, {tp("1"), MultiPoly::constant(T, 2 * coef(rng) + 1),
                       MultiPoly::constant(T, coef(rng)), MultiPoly::constant(T, coef(rng)),
                       tp("0"), tp("0")});
        if (is_zero_mod(base.delta(), pi)) continue;
        Mat3 u = Mat3::identity(T);
        u.at(0, 2) = MultiPoly::constant(T, 1 + (int)(rng() % 5));
        u.at(1, 2) = MultiPoly::constant(T, coef(rng));
        u.at(2, 2) = pv;
        built = transform(base, u, RationalFunction::one(T));
      } else {
        // line: u (w.x)^2 + pi^j R with j = 1 (k=1) or 2 (k=2)
        MultiPoly w0 = MultiPoly::constant(T, coef(rng)), w1 = MultiPoly::constant(T, 1),
                  w2 = MultiPoly::constant(T, coef(rng));
        MultiPoly mult = flavor == 1 ? pv : pv * pv;
        built = Conic(T, {w0 * w0 + mult * coef(rng), w1 * w1 + mult * coef(rng),
                          w2 * w2 + mult * coef(rng), 2 * w0 * w1 + mult * coef(rng),
                          2 * w0 * w2 + mult * coef(rng), 2 * w1 * w2 + mult * coef(rng)});
      }
    } catch (const ConicError&) {
      continue;
    }
    auto [L, slog] = scale_minimise(*built);
    bool zero_mod = true;
    for (const auto& cc : L.coeffs()) zero_mod = zero_mod && is_zero_mod(cc, pi);
    if (zero_mod) continue;
    if (valuation_at(L.delta(), pi) < 2) continue;

    SingularLocus s = singular_locus_mod(L, pi);
    if (s.kind == SingularLocus::Kind::Nonsingular) continue;
    MinimiseResult r = minimise_at_pi(L, pi);
    if (r.stats.vpi_after >= r.stats.vpi_before) {
      detail = "no strict decrease";
      return false;
    }
    const int drop = r.stats.vpi_before - r.stats.vpi_after;
    if (s.kind == SingularLocus::Kind::Point) {
      ++points;
      if (drop != 2) {
        detail = "point branch dropped " + std::to_string(drop);
        return false;
      }
    } else {
      if (drop == 1)
        ++lines1;
      else if (drop == 4)
        ++lines2;
      else {
        detail = "line branch dropped " + std::to_string(drop);
        return false;
      }
    }
    if (verify_log(L, r.log) != r.conic) {
      detail = "log does not replay";
      return false;
    }
    ++done;
  }
  detail = std::to_string(points) + " point, " + std::to_string(lines1) + " line k=1, " +
           std::to_string(lines2) + " line k=2";
  return points > 100 && lines1 > 100 && lines2 > 100;
}

// ------------------------------------------------------------------- 9

bool c9_rational_regime(std::string& detail) {
  const VarList T{"t1", "t2"};
  std::mt19937_64 rng(0xC9000001u);
  std::uniform_int_distribution<int> coef(-50, 50);
  int done = 0;
  while (done < 200) {
    std::array<MultiPoly, 6> c;
    for (auto& p : c) p = MultiPoly::constant(T, coef(rng));
    std::optional<Conic> L;
    try {
      L = Conic(T, c);
    } catch (const ConicError&) {
      continue;
    }
    Int delta = L->delta().constant_value();
    if (abs(delta) > 1000000) continue;

    MinimiseResult r = rational_minimisation(*L);
    if (verify_log(*L, r.log) != r.conic) {
      detail = "log does not replay";
      return false;
    }
    Int out = r.conic.delta().constant_value();
    for (const auto& [p, e] : factor_integer(out)) {
      if (p != 2 && e >= 2) {
        detail = "odd part not squarefree: " + out.get_str() + " from |delta| " +
                 delta.get_str();
        return false;
      }
    }
    ++done;
  }
  detail = "200 instances, odd parts squarefree, logs verified";
  return true;
}

// ------------------------------------------------------------------ 10

bool c10_factor_oracle(std::string& detail) {
  std::mt19937_64 rng(0xCA000001u);
  std::uniform_int_distribution<int> coef(-4, 4), nfd(1, 3);

  // random polynomial of total degree <= 3
  auto rand_poly = [&]() {
    MultiPoly p(GH);
    for (int d = 0; d <= 3; ++d)
      for (int i = 0; i <= d; ++i)
        if (rng() % 3 == 0) p.add_term({i, d - i}, coef(rng));
    return p;
  };
  // independent specialization-based irreducibility audit
  auto audit_irreducible = [&](const MultiPoly& f) -> bool {
    if (f.is_zero() || f.is_constant()) return false;
    if (f.content() != 1) return false;
    const int dg = f.degree_in(0), dh = f.degree_in(1);
    if (dg == 0 || dh == 0) {
      // univariate: no x-free second factor possible; certify directly
      size_t v = dg > 0 ? 0 : 1;
      auto u = factor_univariate(f);
      return u.poly_factors.size() == 1 && u.poly_factors[0].second == 1 &&
             u.content_factors.empty() && f.degree_in(v) > 0;
    }
    // no factor free of g: the gcd of the g-coefficients must be trivial
    std::vector<MultiPoly> cs((size_t)dg + 1, MultiPoly::zero(GH));
    for (const auto& [e, cc] : f.terms()) {
      Expvec e2 = e;
      e2[0] = 0;
      cs[(size_t)e[0]].add_term(e2, cc);
    }
    MultiPoly cont = MultiPoly::zero(GH);
    for (const auto& co : cs)
      if (!co.is_zero()) cont = poly_gcd(cont, co);
    if (!cont.is_constant()) return false;
    // a degree-preserving specialization with an irreducible fibre
    for (long a = -10; a <= 10; ++a) {
      MultiPoly fib = f.eval_var(1, a);
      if (fib.degree_in(0) != dg) continue;
      auto u = factor_univariate(fib.primitive_part());
      if (u.poly_factors.size() == 1 && u.poly_factors[0].second == 1) return true;
    }
    return false;
  };

  for (int trial = 0; trial < 500; ++trial) {
    const int n = nfd(rng);
    std::vector<MultiPoly> factors;
    MultiPoly prod = MultiPoly::constant(GH, 1);
    for (int i = 0; i < n; ++i) {
      MultiPoly f = rand_poly();
      while (!audit_irreducible(normalize_sign(f.primitive_part())))
        f = rand_poly();
      f = normalize_sign(f.primitive_part());
      factors.push_back(f);
      prod = prod * f;
    }
    // expected multiset
    std::map<std::string, int> want;
    for (const auto& f : factors) ++want[f.str()];
    auto got_f = factor_bivariate(prod);
    std::map<std::string, int> got;
    for (const auto& [f, e] : got_f.poly_factors) got[f.str()] += e;
    if (got != want || got_f.unit != 1 || !got_f.content_factors.empty()) {
      detail = "multiset mismatch on trial " + std::to_string(trial) + ": " + prod.str();
      return false;
    }
    if (got_f.expand(GH) != prod) {
      detail = "re-expansion mismatch on trial " + std::to_string(trial);
      return false;
    }
  }
  detail = "500 products recovered exactly";
  return true;
}

// ------------------------------------------------------------------ 11

bool c11_determinism(std::string& detail) {
  if (g_c7_transcripts.empty()) {
    int solved = 0;
    g_c7_transcripts = run_criterion7_suite(1, &solved);
  }
  int solved2 = 0, solved4 = 0;
  auto again = run_criterion7_suite(1, &solved2);
  auto jobs4 = run_criterion7_suite(4, &solved4);
  if (again != g_c7_transcripts) {
    detail = "repeat run transcripts differ";
    return false;
  }
  if (jobs4 != g_c7_transcripts) {
    detail = "jobs=4 transcripts differ";
    return false;
  }
  detail = "transcripts byte-identical across reruns and under jobs=4";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> table{
      {1, "IC-simplification chain identity", c1_ic_chain},
      {2, "RM-simplification chain identity", c2_rm_chain},
      {3, "lambda21/q21 resultant identities", c3_resultants},
      {4, "lambda40 singular locus", c4_singular_locus},
      {5, "q40 quadratic interpolation", c5_ansatz},
      {6, "table-1 factorization spot checks", c6_table1},
      {7, "round-trip search oracle (100 instances)", c7_round_trip},
      {8, "minimise-at-pi property suite (1000 calls)", c8_minimise_at_pi},
      {9, "rational-conic regime (200 instances)", c9_rational_regime},
      {10, "bivariate factorization oracle (500 products)", c10_factor_oracle},
      {11, "transcript determinism incl. jobs=4", c11_determinism},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (auto& c : table) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " ["
         << dt << "s]";
    if (!detail.empty()) line << " -- " << detail;
    std::cout << line.str() << std::endl;
    if (!ok) ++failures;
  }
  return failures;
}
