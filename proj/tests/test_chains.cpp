#include <catch2/catch_amalgamated.hpp>

#include "kchain/chains.hpp"
#include "kchain/constructions.hpp"
#include "kchain/rng.hpp"
#include "oracle.hpp"

using namespace kchain;

namespace {

PointSet three_points_f3() {
  return make_pointset(AlgebraicStructure::prime_field(3), 2, {{1, 0}, {0, 1}, {1, 1}});
}

PointSet random_set(const AlgebraicStructure& S, std::uint32_t d, std::uint64_t max_size,
                    std::uint64_t seed) {
  SplitMix64 gen(seed);
  const std::uint64_t space = checked_space_size(S.q(), d, kDefaultEnumerationLimit);
  const std::uint64_t n = gen.below(std::min(space, max_size) + 1);
  return sample_uniform(S, d, n, gen.next());
}

std::vector<Element> random_alphas(const AlgebraicStructure& S, std::uint32_t k,
                                   std::uint64_t seed) {
  SplitMix64 gen(seed);
  std::vector<Element> alphas(k);
  for (auto& a : alphas) a = static_cast<Element>(gen.below(S.q()));
  return alphas;
}

}  // namespace

TEST_CASE("pair counts") {
  const auto full = enumerate_space(AlgebraicStructure::prime_field(3), 2);
  CHECK(pair_count(full, 1) == 24);
  CHECK(pair_count(full, 1) ==
        oracle::count_chains(full, {{1}, Distinctness::AllTuples}).convert_to<std::int64_t>());

  const auto empty = make_pointset(AlgebraicStructure::prime_field(3), 2, {});
  CHECK(pair_count(empty, 0) == 0);

  CHECK(pair_count(three_points_f3(), 1) == 6);
}

TEST_CASE("pair counts add up to |E|^2 across gamma") {
  for (const auto& S : {AlgebraicStructure::prime_field(5), AlgebraicStructure::integer_ring(3, 2),
                        AlgebraicStructure::extension_field(3, 2)}) {
    const auto E = random_set(S, 2, 12, 42 + S.q());
    const auto hist = pair_count_histogram(E);
    std::int64_t total = 0;
    for (Element g = 0; g < S.q(); ++g) {
      CHECK(hist[g] == pair_count(E, g));
      total += hist[g];
    }
    CHECK(total == std::int64_t(E.size()) * std::int64_t(E.size()));
  }
}

TEST_CASE("neighbor counts") {
  const auto F3 = AlgebraicStructure::prime_field(3);
  const auto full = enumerate_space(F3, 2);
  const auto counts = neighbor_counts(full, 1, full);
  // x = (1,0) solves x . y = 1 by y_1 = 1, three choices of y_2
  const auto idx = [&](const Point& p) {
    return std::lower_bound(full.points.begin(), full.points.end(), p) - full.points.begin();
  };
  CHECK(counts[idx({1, 0})] == 3);
  CHECK(counts[idx({0, 0})] == 0);  // 0 . y = 0 != 1

  std::int64_t sum = 0;
  for (auto c : counts) sum += c;
  CHECK(sum == pair_count(full, 1));

  const auto Z9 = AlgebraicStructure::integer_ring(3, 2);
  const auto line = make_pointset(Z9, 2, line_points(Z9, {3, 2}, 2).points);
  const auto eval = make_pointset(Z9, 2, {{3, 2}});
  CHECK(line.size() == 9);
  CHECK(neighbor_counts(line, 2, eval) == std::vector<std::int64_t>{9});

  CHECK_THROWS_AS(neighbor_counts(full, 1, line), std::invalid_argument);
}

TEST_CASE("dp matches the frozen small examples") {
  const auto E = three_points_f3();
  CHECK(count_chains_dp(E, {{1}, Distinctness::AllTuples}).count == 6);
  CHECK(count_chains_dp(E, {{1}, Distinctness::AdjacentDistinct}).count == 4);

  const auto single = make_pointset(AlgebraicStructure::prime_field(3), 2, {{0, 0}});
  CHECK(count_chains_dp(single, {{0, 0}, Distinctness::AllTuples}).count == 1);

  const auto full = enumerate_space(AlgebraicStructure::prime_field(3), 2);
  CHECK(count_chains_dp(full, {{1, 1}, Distinctness::AllTuples}).count == 72);
}

TEST_CASE("dp rejects pairwise and empty alpha") {
  const auto E = three_points_f3();
  CHECK_THROWS_AS(count_chains_dp(E, {{1}, Distinctness::PairwiseDistinct}),
                  std::invalid_argument);
  CHECK_THROWS_AS(count_chains_dp(E, {{}, Distinctness::AllTuples}), std::invalid_argument);
  CHECK_THROWS_AS(count_chains_dp(E, {{7}, Distinctness::AllTuples}), std::invalid_argument);
}

TEST_CASE("brute force matches dp and the blind oracle on seeded instances") {
  const std::vector<AlgebraicStructure> structures = {AlgebraicStructure::prime_field(3),
                                                      AlgebraicStructure::prime_field(5)};
  int instances = 0;
  for (const auto& S : structures) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto E = random_set(S, 2, 8, mix64(seed + S.q() * 1000));
      const std::uint32_t k = 1 + seed % 3;
      const auto alphas = random_alphas(S, k, seed * 7 + 1);
      for (auto policy : {Distinctness::AllTuples, Distinctness::AdjacentDistinct}) {
        const ChainSpec spec{alphas, policy};
        const Int dp = count_chains_dp(E, spec).count;
        const Int brute = count_chains_brute(E, spec).count;
        REQUIRE(dp == brute);
        if (E.size() <= 5 && k <= 2) REQUIRE(dp == oracle::count_chains(E, spec));
      }
      ++instances;
    }
  }
  CHECK(instances == 60);
}

TEST_CASE("pairwise-distinct counting") {
  const auto F3 = AlgebraicStructure::prime_field(3);
  const auto full = enumerate_space(F3, 2);
  // 24 ordered pairs with dot 1, of which the 4 points with x . x = 1 loop
  CHECK(count_chains_brute(full, {{1}, Distinctness::PairwiseDistinct}).count == 20);

  const auto axes = axes_set(F3, 2);
  CHECK(count_chains_brute(axes, {{0}, Distinctness::PairwiseDistinct}).count >= 9);

  // oracle agreement under the pairwise policy
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto E = random_set(F3, 2, 5, mix64(seed + 77));
    const ChainSpec spec{random_alphas(F3, 2, seed), Distinctness::PairwiseDistinct};
    CHECK(count_chains_brute(E, spec).count == oracle::count_chains(E, spec));
  }
}

TEST_CASE("policy monotonicity") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto S = AlgebraicStructure::integer_ring(3, 2);
    const auto E = random_set(S, 2, 7, mix64(seed + 123));
    const auto alphas = random_alphas(S, 2, seed + 5);
    const Int all = count_chains_brute(E, {alphas, Distinctness::AllTuples}).count;
    const Int adj = count_chains_brute(E, {alphas, Distinctness::AdjacentDistinct}).count;
    const Int pw = count_chains_brute(E, {alphas, Distinctness::PairwiseDistinct}).count;
    CHECK(pw <= adj);
    CHECK(adj <= all);
  }
}

TEST_CASE("global mass: counts over all alpha tuples sum to |E|^{k+1}") {
  const auto S = AlgebraicStructure::prime_field(3);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto E = random_set(S, 2, 9, mix64(seed + 321));
    for (std::uint32_t k = 1; k <= 2; ++k) {
      Int total = 0;
      std::vector<Element> alphas(k, 0);
      for (;;) {
        total += count_chains_dp(E, {alphas, Distinctness::AllTuples}).count;
        std::uint32_t pos = 0;
        while (pos < k && ++alphas[pos] == S.q()) alphas[pos++] = 0;
        if (pos >= k) break;
      }
      CHECK(total == ipow(Int(E.size()), k + 1));
    }
  }
}

TEST_CASE("reversal symmetry") {
  for (const auto& S : {AlgebraicStructure::prime_field(5), AlgebraicStructure::integer_ring(3, 2),
                        AlgebraicStructure::extension_field(3, 2)}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto E = random_set(S, 2, 8, mix64(seed ^ (S.q() * 99)));
      auto alphas = random_alphas(S, 3, seed);
      const Int fwd = count_chains_dp(E, {alphas, Distinctness::AllTuples}).count;
      std::reverse(alphas.begin(), alphas.end());
      CHECK(count_chains_dp(E, {alphas, Distinctness::AllTuples}).count == fwd);
    }
  }
}

TEST_CASE("scaling covariance: E of type alpha vs cE of type c^2 alpha") {
  for (const auto& S : {AlgebraicStructure::prime_field(5), AlgebraicStructure::integer_ring(3, 2),
                        AlgebraicStructure::extension_field(3, 2)}) {
    const auto E = random_set(S, 2, 9, 2024 + S.q());
    const auto alphas = random_alphas(S, 2, 11);
    const Int base = count_chains_dp(E, {alphas, Distinctness::AllTuples}).count;
    for (Element c : S.units()) {
      std::vector<Point> scaled;
      for (const auto& pt : E.points) {
        Point s;
        for (Element coord : pt) s.push_back(S.mul(c, coord));
        scaled.push_back(std::move(s));
      }
      const auto cE = make_pointset(S, 2, std::move(scaled));
      const Element c2 = S.mul(c, c);
      std::vector<Element> scaled_alphas;
      for (Element a : alphas) scaled_alphas.push_back(S.mul(c2, a));
      CHECK(count_chains_dp(cE, {scaled_alphas, Distinctness::AllTuples}).count == base);
    }
  }
}

TEST_CASE("report fields") {
  const auto full = enumerate_space(AlgebraicStructure::prime_field(3), 2);
  const auto r = count_chains_dp(full, {{1}, Distinctness::AllTuples});
  CHECK(r.count == 24);
  CHECK(r.main_term == Rational(81, 3));
  CHECK(r.relative_error == Rational(-1, 9));
  CHECK(r.policy == Distinctness::AllTuples);
  CHECK(r.k == 1);
  CHECK(r.provenance.structure == "Fp:3");
  CHECK(r.provenance.set_size == 9);
  // reduced main-term denominator divides q^k
  const Int den = boost::multiprecision::denominator(r.main_term);
  CHECK(ipow(Int(3), r.k) % den == 0);

  const auto empty = make_pointset(AlgebraicStructure::prime_field(3), 2, {});
  const auto re = count_chains_dp(empty, {{1}, Distinctness::AllTuples});
  CHECK(re.count == 0);
  CHECK(re.main_term == 0);
  CHECK(re.relative_error == 0);
}

TEST_CASE("brute budget precheck") {
  const auto full = enumerate_space(AlgebraicStructure::prime_field(3), 2);
  try {
    count_chains_brute(full, {{1, 1}, Distinctness::AllTuples}, 100);
    FAIL("budget should have tripped");
  } catch (const BudgetExceeded& e) {
    CHECK(e.required == 729);  // 9^3
  }
}

TEST_CASE("dot matrix and recomputed layers agree") {
  const auto S = AlgebraicStructure::prime_field(5);
  const auto E = sample_uniform(S, 2, 20, 9);
  const ChainSpec spec{{1, 2, 3}, Distinctness::AllTuples};
  CHECK(count_chains_dp(E, spec).count == count_chains_brute(E, spec).count);
}

TEST_CASE("dp above the matrix cutoff matches the pair-count route") {
  // |E|^2 > 2^22 forces the per-layer recompute path; a k = 1 count is an
  // independent single pass over E^2
  const auto S = AlgebraicStructure::prime_field(1009);
  const auto E = sample_uniform(S, 2, 2100, 4);
  REQUIRE(std::uint64_t(E.size()) * E.size() > kDotMatrixEntries);
  const auto r = count_chains_dp(E, {{1}, Distinctness::AllTuples});
  CHECK(r.count == pair_count(E, 1));
}

TEST_CASE("width check refuses counts that could overflow 128-bit lanes") {
  const auto E = three_points_f3();
  const ChainSpec spec{std::vector<Element>(127, 0), Distinctness::AllTuples};
  CHECK_THROWS_AS(count_chains_dp(E, spec), std::invalid_argument);
}
