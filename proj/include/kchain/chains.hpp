#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kchain/numeric.hpp"
#include "kchain/pointset.hpp"

namespace kchain {

enum class Distinctness { AllTuples, AdjacentDistinct, PairwiseDistinct };

inline std::string to_string(Distinctness d) {
  switch (d) {
    case Distinctness::AllTuples: return "all-tuples";
    case Distinctness::AdjacentDistinct: return "adjacent-distinct";
    case Distinctness::PairwiseDistinct: return "pairwise-distinct";
  }
  return "?";
}

inline Distinctness distinctness_from_string(const std::string& s) {
  if (s == "all" || s == "all-tuples") return Distinctness::AllTuples;
  if (s == "adjacent" || s == "adjacent-distinct") return Distinctness::AdjacentDistinct;
  if (s == "pairwise" || s == "pairwise-distinct") return Distinctness::PairwiseDistinct;
  throw std::invalid_argument("unknown distinctness policy '" + s + "'");
}

/// The target tuple (alpha_1..alpha_k) of consecutive dot products plus the
/// tuple-distinctness policy under which chains are counted.
struct ChainSpec {
  std::vector<Element> alphas;
  Distinctness policy = Distinctness::AllTuples;

  std::uint32_t k() const { return static_cast<std::uint32_t>(alphas.size()); }
};

struct Provenance {
  std::string structure;
  std::uint32_t dim = 0;
  std::uint64_t set_size = 0;
  std::optional<std::uint64_t> seed;
};

/// Exact chain count next to the orthogonality main term |E|^{k+1} / q^k.
struct CountReport {
  Int count;
  Rational main_term;
  Rational relative_error;  // (count - main) / main, 0 when the main term is 0
  Distinctness policy = Distinctness::AllTuples;
  std::uint32_t k = 0;
  Provenance provenance;
};

struct BudgetExceeded : std::runtime_error {
  Int required;
  explicit BudgetExceeded(Int required_visits)
      : std::runtime_error("tuple budget exceeded; the run would need " + required_visits.str() +
                           " visits"),
        required(std::move(required_visits)) {}
};

inline constexpr std::uint64_t kDefaultBruteBudget = 100'000'000;

/// |E|^2 cap under which the dot-product matrix is materialized once and
/// reused per layer; above it layers recompute dots. Results are identical.
inline constexpr std::uint64_t kDotMatrixEntries = std::uint64_t{1} << 22;

namespace detail {

inline void check_alphas(const PointSet& E, const ChainSpec& spec) {
  if (spec.alphas.empty()) throw std::invalid_argument("chain spec needs k >= 1");
  for (Element a : spec.alphas) E.structure.check(a);
}

inline Provenance provenance_of(const PointSet& E, std::optional<std::uint64_t> seed = {}) {
  return Provenance{E.structure.literal(), E.dim, E.size(), seed};
}

inline CountReport finish_report(const PointSet& E, const ChainSpec& spec, Int count) {
  CountReport r;
  r.count = std::move(count);
  r.k = spec.k();
  r.policy = spec.policy;
  r.provenance = provenance_of(E);
  const Int main_num = ipow(Int(E.size()), spec.k() + 1);
  const Int main_den = ipow(Int(E.structure.q()), spec.k());
  r.main_term = Rational(main_num, main_den);
  r.relative_error =
      r.main_term == 0 ? Rational(0) : Rational(r.count * main_den - main_num, main_num);
  return r;
}

/// Counts are kept in unsigned 128-bit lanes; refuse instances whose trivial
/// bound |E|^{k+1} could overflow them.
inline void check_width(std::size_t n, std::uint32_t k) {
  if (ipow(Int(n), k + 1) >= (Int(1) << 127))
    throw std::invalid_argument("instance too large: |E|^{k+1} exceeds the 127-bit count budget");
}

}  // namespace detail

/// Ordered pairs (x, y) in E^2 (x = y allowed) with x . y = gamma.
inline std::int64_t pair_count(const PointSet& E, Element gamma) {
  E.structure.check(gamma);
  std::int64_t n = 0;
  for (const auto& x : E.points)
    for (const auto& y : E.points)
      if (E.structure.dot(x, y) == gamma) ++n;
  return n;
}

/// All q pair counts in a single pass over E^2.
inline std::vector<std::int64_t> pair_count_histogram(const PointSet& E) {
  std::vector<std::int64_t> hist(E.structure.q(), 0);
  for (const auto& x : E.points)
    for (const auto& y : E.points) ++hist[E.structure.dot(x, y)];
  return hist;
}

/// n_gamma(x) = |{y in E : x . y = gamma}| for every x in eval_set, aligned
/// with eval_set.points.
inline std::vector<std::int64_t> neighbor_counts(const PointSet& E, Element gamma,
                                                 const PointSet& eval_set) {
  E.structure.check(gamma);
  if (eval_set.structure != E.structure || eval_set.dim != E.dim)
    throw std::invalid_argument("neighbor_counts: eval set structure/dimension mismatch");
  std::vector<std::int64_t> out;
  out.reserve(eval_set.size());
  for (const auto& x : eval_set.points) {
    std::int64_t n = 0;
    for (const auto& y : E.points)
      if (E.structure.dot(x, y) == gamma) ++n;
    out.push_back(n);
  }
  return out;
}

/// Transfer recurrence c_1(x) = 1, c_{j+1}(y) = sum over x with x . y =
/// alpha_j (and x != y under adjacent-distinct) of c_j(x). O(k |E|^2) time.
inline CountReport count_chains_dp(const PointSet& E, const ChainSpec& spec) {
  if (spec.policy == Distinctness::PairwiseDistinct)
    throw std::invalid_argument("pairwise-distinct requires count_chains_brute");
  detail::check_alphas(E, spec);
  const std::size_t n = E.size();
  if (n == 0) return detail::finish_report(E, spec, 0);
  detail::check_width(n, spec.k());

  const bool adjacent = spec.policy == Distinctness::AdjacentDistinct;
  const bool use_matrix = std::uint64_t(n) * n <= kDotMatrixEntries;
  std::vector<Element> dots;
  if (use_matrix) {
    dots.resize(n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        dots[x * n + y] = E.structure.dot(E.points[x], E.points[y]);
  }
  const auto dot_at = [&](std::size_t x, std::size_t y) {
    return use_matrix ? dots[x * n + y] : E.structure.dot(E.points[x], E.points[y]);
  };

  std::vector<unsigned __int128> cur(n, 1), nxt(n);
  for (Element alpha : spec.alphas) {
    for (std::size_t y = 0; y < n; ++y) {
      unsigned __int128 acc = 0;
      for (std::size_t x = 0; x < n; ++x)
        if (dot_at(x, y) == alpha) acc += cur[x];
      if (adjacent && dot_at(y, y) == alpha) acc -= cur[y];
      nxt[y] = acc;
    }
    cur.swap(nxt);
  }
  unsigned __int128 total = 0;
  for (auto v : cur) total += v;
  return detail::finish_report(E, spec, int_from_u128(total));
}

/// Exhaustive enumeration with early pruning; the only counter honoring
/// pairwise distinctness. Refuses instances whose trivial visit bound
/// |E|^{k+1} exceeds the budget.
inline CountReport count_chains_brute(const PointSet& E, const ChainSpec& spec,
                                      std::uint64_t budget = kDefaultBruteBudget) {
  detail::check_alphas(E, spec);
  const std::size_t n = E.size();
  const std::uint32_t k = spec.k();
  if (n == 0) return detail::finish_report(E, spec, 0);
  detail::check_width(n, k);
  if (const Int worst = ipow(Int(n), k + 1); worst > budget) throw BudgetExceeded(worst);

  const bool pairwise = spec.policy == Distinctness::PairwiseDistinct;
  const bool adjacent = spec.policy == Distinctness::AdjacentDistinct;
  std::vector<char> used(n, 0);
  std::vector<std::size_t> stack;
  stack.reserve(k + 1);
  unsigned __int128 count = 0;

  // depth-first over tuple positions; depth = number of points placed
  const auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == std::size_t(k) + 1) {
      ++count;
      return;
    }
    const bool first = depth == 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pairwise && used[i]) continue;
      if (!first) {
        const std::size_t prev = stack.back();
        if (adjacent && i == prev) continue;
        if (E.structure.dot(E.points[prev], E.points[i]) != spec.alphas[depth - 1]) continue;
      }
      stack.push_back(i);
      if (pairwise) used[i] = 1;
      self(self, depth + 1);
      if (pairwise) used[i] = 0;
      stack.pop_back();
    }
  };
  recurse(recurse, 0);
  return detail::finish_report(E, spec, int_from_u128(count));
}

}  // namespace kchain
