// Acceptance suite: one pass/fail line per criterion, exit 0 only if all pass.
// Criterion 1 additionally drives the installed CLI when its path is passed
// as argv[1].

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "kchain/charsums.hpp"
#include "kchain/constructions.hpp"
#include "kchain/experiments.hpp"
#include "kchain/lemmas.hpp"
#include "kchain/rng.hpp"

using namespace kchain;

namespace {

int g_failures = 0;

void criterion(int index, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("%s %2d. %s%s%s\n", ok ? "PASS" : "FAIL", index, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

PointSet seeded_subset(const AlgebraicStructure& S, std::uint32_t d, std::uint64_t max_size,
                       std::uint64_t seed) {
  SplitMix64 gen(seed);
  const std::uint64_t space = checked_space_size(S.q(), d, kDefaultEnumerationLimit);
  const std::uint64_t n = gen.below(std::min(space, max_size) + 1);
  return sample_uniform(S, d, n, gen.next());
}

std::vector<Element> seeded_alphas(const AlgebraicStructure& S, std::uint32_t k,
                                   std::uint64_t seed) {
  SplitMix64 gen(seed);
  std::vector<Element> alphas(k);
  for (auto& a : alphas) a = static_cast<Element>(gen.below(S.q()));
  return alphas;
}

// 1. Exact reproduction of the Z_9^2 two-line counterexample, with the
//    expected lists duplicated here so the library cannot vouch for itself.
void criterion_1(const char* cli_path) {
  const auto rep = erratum_counterexample();
  const std::vector<Point> expect_v = {{0, 1}, {1, 4}, {2, 7}, {3, 1}, {4, 4},
                                       {5, 7}, {6, 1}, {7, 4}, {8, 7}};
  const std::vector<Point> expect_w = {{0, 1}, {1, 7}, {2, 4}, {3, 1}, {4, 7},
                                       {5, 4}, {6, 1}, {7, 7}, {8, 4}};
  const std::vector<Point> expect_common = {{0, 1}, {3, 1}, {6, 1}};
  bool ok = rep.pass && rep.line_v.points == expect_v && rep.line_w.points == expect_w &&
            rep.intersection == expect_common && rep.intersection.size() == 3 &&
            rep.line_v.points != rep.line_w.points;
  std::string detail = "lines and intersection verbatim, zero tolerance";
  if (cli_path != nullptr) {
    const std::string cmd = std::string("\"") + cli_path + "\" erratum-check > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    const bool cli_ok = status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
    ok = ok && cli_ok;
    detail += cli_ok ? "; CLI erratum-check exit 0" : "; CLI erratum-check FAILED";
  }
  criterion(1, "erratum reproduction (exact)", ok, detail);
}

// 2. Three-family construction: |E| = 3p, restricted count exactly p^3,
//    pairwise-distinct 2-chain count at least p^3; Z_9 and Z_25.
void criterion_2() {
  bool ok = true;
  std::string detail;
  const std::vector<std::tuple<std::uint32_t, Element, Element>> cases = {{3, 2, 4}, {5, 2, 3}};
  for (const auto& [p, alpha, beta] : cases) {
    const auto S = AlgebraicStructure::integer_ring(p, 2);
    const auto fam = erratum_family(S, alpha, beta);
    const Int p3 = Int(p) * p * p;
    Int restricted = 0;
    for (const auto& x : fam.x_family)
      for (const auto& y : fam.y_family)
        for (const auto& z : fam.z_family)
          if (S.dot(x, y) == alpha && S.dot(y, z) == beta) ++restricted;
    const Int pairwise =
        count_chains_brute(fam.combined, {{alpha, beta}, Distinctness::PairwiseDistinct}).count;
    ok = ok && fam.combined.size() == 3 * p && restricted == p3 && pairwise >= p3;
    detail += "Z_" + std::to_string(p * p) + ": |E|=" + std::to_string(fam.combined.size()) +
              " restricted=" + restricted.str() + " pairwise=" + pairwise.str() + "  ";
  }
  criterion(2, "three-family construction (exact)", ok, detail);
}

// 3. DP and brute-force counters agree on 200 seeded instances across
//    Fp:3, Fp:5, Z:3^2, F:3^2 under both shared policies.
void criterion_3() {
  const std::vector<AlgebraicStructure> structures = {
      AlgebraicStructure::prime_field(3), AlgebraicStructure::prime_field(5),
      AlgebraicStructure::integer_ring(3, 2), AlgebraicStructure::extension_field(3, 2)};
  int instances = 0, agreements = 0;
  for (std::size_t s = 0; s < structures.size(); ++s) {
    const auto& S = structures[s];
    for (std::uint64_t i = 0; i < 50; ++i) {
      const std::uint64_t seed = derive_seed(3001, s, i);
      const auto E = seeded_subset(S, 2, 8, seed);
      const std::uint32_t k = 1 + static_cast<std::uint32_t>(seed % 3);
      const auto alphas = seeded_alphas(S, k, mix64(seed));
      ++instances;
      bool agree = true;
      for (auto policy : {Distinctness::AllTuples, Distinctness::AdjacentDistinct}) {
        const ChainSpec spec{alphas, policy};
        agree = agree && count_chains_dp(E, spec).count == count_chains_brute(E, spec).count;
      }
      agreements += agree;
    }
  }
  criterion(3, "oracle equivalence dp == brute (exact)", instances == 200 && agreements == 200,
            std::to_string(agreements) + "/" + std::to_string(instances) + " instances agree");
}

// 4. Sum of all-tuples counts over every alpha in F_3^2 equals |E|^3 for 20
//    random sets.
void criterion_4() {
  const auto S = AlgebraicStructure::prime_field(3);
  int good = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto E = seeded_subset(S, 2, 9, derive_seed(4001, 0, i));
    Int total = 0;
    for (Element a = 0; a < 3; ++a)
      for (Element b = 0; b < 3; ++b)
        total += count_chains_dp(E, {{a, b}, Distinctness::AllTuples}).count;
    good += total == ipow(Int(E.size()), 3);
  }
  criterion(4, "global mass identity (exact)", good == 20, std::to_string(good) + "/20 sets");
}

// 5. Decomposition reconstructs q^k * count exactly for k <= 3 and
//    q^d <= 729, and the k = 3 grouping starts from the main term.
void criterion_5() {
  const std::vector<std::pair<AlgebraicStructure, std::uint32_t>> cases = {
      {AlgebraicStructure::prime_field(3), 2},     {AlgebraicStructure::prime_field(3), 3},
      {AlgebraicStructure::prime_field(3), 6},     {AlgebraicStructure::prime_field(5), 2},
      {AlgebraicStructure::prime_field(5), 3},     {AlgebraicStructure::extension_field(3, 2), 2},
      {AlgebraicStructure::extension_field(3, 3), 2}, {AlgebraicStructure::integer_ring(3, 2), 2},
      {AlgebraicStructure::integer_ring(3, 3), 2}, {AlgebraicStructure::integer_ring(5, 2), 2},
  };
  int total = 0, good = 0;
  bool grouping_ok = true;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& [S, d] = cases[c];
    if (ipow(Int(S.q()), d) > 729) continue;
    for (std::uint32_t k = 1; k <= 3; ++k) {
      const std::uint64_t seed = derive_seed(5001, c, k);
      const auto E = seeded_subset(S, d, 16, seed);
      const auto alphas = seeded_alphas(S, k, mix64(seed));
      const auto rep = decompose(E, {alphas, Distinctness::AllTuples});
      ++total;
      Int sum = 0;
      for (const auto& [mask, term] : rep.scaled_terms) sum += term;
      const bool exact = rep.reconstructed && sum == rep.scaled_total &&
                         rep.scaled_terms.at(0) == ipow(Int(E.size()), k + 1);
      good += exact;
      if (k == 3) {
        // grouping by support size reproduces the M, R_1, R_2, R_3 split
        Rational regrouped = rep.grouped[0] + rep.grouped[1] + rep.grouped[2] + rep.grouped[3];
        grouping_ok = grouping_ok && rep.grouped.size() == 4 &&
                      rep.grouped[0] == Rational(ipow(Int(E.size()), 4), ipow(Int(S.q()), 3)) &&
                      regrouped == Rational(rep.scaled_total, ipow(Int(S.q()), 3));
      }
    }
  }
  criterion(5, "decomposition reconstruction (exact)", good == total && grouping_ok,
            std::to_string(good) + "/" + std::to_string(total) + " instances, k=3 grouping " +
                (grouping_ok ? "reproduced" : "broken"));
}

// 6. Explicit-constant bound checks: 500 sets in F_5^3 over every gamma;
//    200 sets in Z_9^2 over every unit gamma and every unit pair.
void criterion_6() {
  const auto F5 = AlgebraicStructure::prime_field(5);
  std::uint64_t field_checks = 0, field_passes = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const auto E = seeded_subset(F5, 3, 125, derive_seed(6001, 0, i));
    for (const auto& rep : check_pair_lemma_all(E, false)) {
      ++field_checks;
      field_passes += rep.pass;
    }
  }

  const auto Z9 = AlgebraicStructure::integer_ring(3, 2);
  std::uint64_t ring_checks = 0, ring_passes = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto E = seeded_subset(Z9, 2, 81, derive_seed(6002, 0, i));
    for (const auto& rep : check_pair_lemma_all(E, true)) {
      ++ring_checks;
      ring_passes += rep.pass;
    }
    const auto units = Z9.units();
    std::vector<Int> l2(units.size());
    for (std::size_t u = 0; u < units.size(); ++u)
      l2[u] = s_l2(E, units[u], SumDomain::WholeSpace);
    const HalfPower bound{Int(2) * Int(E.size()), 2 * (2 * (2 * 2 - 1) + 1), 3};
    const Int bound_sq = bound.squared();
    for (std::size_t u = 0; u < units.size(); ++u)
      for (std::size_t v = 0; v < units.size(); ++v) {
        ++ring_checks;
        ring_passes += l2[u] * l2[v] <= bound_sq;
      }
  }
  const bool ok = field_checks == 500 * 5 && field_passes == field_checks &&
                  ring_checks == 200 * (6 + 36) && ring_passes == ring_checks;
  criterion(6, "explicit-constant pair/two-link bounds (exact)", ok,
            std::to_string(field_passes) + "/" + std::to_string(field_checks) + " field, " +
                std::to_string(ring_passes) + "/" + std::to_string(ring_checks) + " ring");
}

// 7. Support-pattern bound and closed form, exhaustive for k <= 14.
void criterion_7() {
  std::uint64_t checks = 0, passes = 0;
  for (std::uint32_t k = 1; k <= 14; ++k)
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << k); ++bits) {
      std::vector<bool> pattern(k);
      for (std::uint32_t i = 0; i < k; ++i) pattern[i] = bits >> i & 1;
      const auto t = term_structure(pattern);
      ++checks;
      passes += t.closed_form_consistent && t.bound_holds;
    }
  criterion(7, "support-pattern lemma, exhaustive k <= 14", checks == passes && checks == (1ull << 15) - 2,
            std::to_string(passes) + "/" + std::to_string(checks) + " tuples");
}

// 8. Quadratic-form bound on 1000 seeded rational instances with m, n <= 8.
void criterion_8() {
  std::uint64_t passes = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    SplitMix64 gen(derive_seed(8001, 0, t));
    const auto rnd = [&gen] {
      return Rational(std::int64_t(gen.below(19)) - 9, std::int64_t(gen.below(9)) + 1);
    };
    const std::size_t m = 1 + gen.below(8), n = 1 + gen.below(8);
    std::vector<std::vector<RationalComplex>> c(m, std::vector<RationalComplex>(n));
    for (auto& row : c)
      for (auto& v : row) v = {rnd(), Rational(0)};
    std::vector<RationalComplex> z(m), y(n);
    for (auto& v : z) v = {rnd(), rnd()};
    for (auto& v : y) v = {rnd(), rnd()};
    passes += check_rc(c, z, y).pass;
  }
  criterion(8, "quadratic-form bound, 1000 exact rational instances", passes == 1000,
            std::to_string(passes) + "/1000");
}

// 9. Main-term accuracy: field sweep q = 25 within the 0.10 tolerance; ring
//    sweep q = 9 capped at the full space with the documented exact -1/9
//    saturation error.
void criterion_9() {
  SweepConfig field;
  field.structure_literal = "F:5^2";
  field.d = 2;
  field.alphas = {1, 2};
  field.sizes = {400};
  field.trials = 20;
  field.master_seed = 20260809;
  field.tolerance = Rational(1, 10);
  const auto frep = threshold_sweep(field);
  // |E| = 400 >= 3 q^{3/2} = 375, as the threshold catalog demands
  const auto thr = threshold_exponent(Setting::Field, 2, 2, 1, ZeroPattern::AllNonzero);
  const bool size_ok = thr.exponent == Rational(3, 2) && 400 >= 3 * 125;
  const bool field_ok = frep.cells.size() == 1 && !frep.cells[0].skipped &&
                        frep.cells[0].pass && frep.cells[0].rel_errors.size() == 20;

  SweepConfig ring;
  ring.structure_literal = "Z:3^2";
  ring.d = 2;
  ring.alphas = {2, 4};
  ring.sizes = {141};  // smallest integer with s^4 >= 3^18, i.e. >= 3 q^{7/4}
  ring.trials = 20;
  ring.master_seed = 20260809;
  ring.tolerance = Rational(1, 10);
  const auto rrep = threshold_sweep(ring);
  bool ring_ok = rrep.cells.size() == 1 && rrep.cells[0].size == 81 &&
                 rrep.cells[0].near_saturation;
  // the threshold exceeds the space; the capped cell is deterministic and its
  // exact saturation error is -1/9 (documented degraded accuracy)
  ring_ok = ring_ok && ipow(Int(141), 4) >= ipow(Int(3), 18) && ipow(Int(140), 4) < ipow(Int(3), 18);
  for (const auto& e : rrep.cells[0].rel_errors) ring_ok = ring_ok && e == Rational(-1, 9);
  ring_ok = ring_ok && rrep.cells[0].mean_abs_error == Rational(1, 9);

  const double field_mean = approx(frep.cells.empty() ? Rational(0) : frep.cells[0].mean_abs_error);
  criterion(9, "main-term asymptotics (statistical, artifact tolerance)",
            size_ok && field_ok && ring_ok,
            "field mean |rel err| = " + std::to_string(field_mean) +
                " <= 0.10; ring capped at 81 with exact error -1/9 by saturation");
}

// 10. Extremal sets beat the main term: counts >= q^{k+1} and exceed the
//     prediction by at least q^{k-1}/4.
void criterion_10() {
  bool ok = true;
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const auto S = AlgebraicStructure::prime_field(q);
    const auto axes = axes_set(S, 2);
    const auto shifted = shifted_lines_set(S, 2);
    for (std::uint32_t k = 1; k <= 3; ++k) {
      const Int qk1 = ipow(Int(q), k + 1);
      const Int axes_count =
          count_chains_dp(axes, {std::vector<Element>(k, 0), Distinctness::AllTuples}).count;
      // count/main >= q^{k-1}/4 is the integer inequality 4 q count >= |E|^{k+1}
      ok = ok && axes_count >= qk1 &&
           4 * axes_count * q >= ipow(Int(axes.size()), k + 1);
      const Int shifted_count =
          count_chains_dp(shifted, {std::vector<Element>(k, 2), Distinctness::AllTuples}).count;
      ok = ok && shifted_count >= qk1 &&
           4 * shifted_count * q >= ipow(Int(shifted.size()), k + 1);
    }
  }
  criterion(10, "extremal contrast (exact)", ok,
            "axes and shifted-lines counts >= q^{k+1} and >= (q^{k-1}/4) * main term");
}

// 11. Small-set ratios over 100 seeded 20-point subsets of F_7^2 for
//     k in {2,3,5}; the empirical envelope max ratio <= 4 must hold.
void criterion_11() {
  bool ok = true;
  std::string detail;
  for (std::uint32_t k : {2u, 3u, 5u}) {
    SmallSetSweepConfig config;
    config.structure_literal = "Fp:7";
    config.k = k;
    config.size = 20;
    config.trials = 100;
    config.master_seed = 1100 + k;
    const auto sweep = smallset_sweep(config);
    ok = ok && sweep.ratios.size() == 100 && sweep.max_ratio <= 4;
    detail += "k=" + std::to_string(k) + " max=" + to_decimal(sweep.max_ratio) + "  ";
  }
  criterion(11, "small-set ratio envelope (reported, soft)", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli_path = argc > 1 ? argv[1] : nullptr;
  criterion_1(cli_path);
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures == 0) {
    std::printf("all 11 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
