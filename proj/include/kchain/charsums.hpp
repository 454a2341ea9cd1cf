#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "kchain/chains.hpp"
#include "kchain/halfpower.hpp"
#include "kchain/numeric.hpp"
#include "kchain/pointset.hpp"

namespace kchain {

/// Bound inflation factor: 1 off zero, sqrt(q) at zero. Field structures only.
inline HalfPower lambda_factor(Element gamma, const AlgebraicStructure& S) {
  if (!S.is_field())
    throw std::domain_error("lambda_factor is defined for field structures only");
  S.check(gamma);
  return HalfPower{Int(1), gamma == 0 ? S.e() : 0u, S.p()};
}

/// The one-point character sum sum_{s != 0} sum_{y in E} chi(s(x.y - alpha)),
/// evaluated exactly by orthogonality as q * n_alpha(x) - |E|.
inline std::int64_t s_sum(const PointSet& E, const Point& x, Element alpha) {
  E.structure.check(alpha);
  if (x.size() != E.dim) throw std::invalid_argument("s_sum: dimension mismatch");
  std::int64_t n = 0;
  for (const auto& y : E.points)
    if (E.structure.dot(x, y) == alpha) ++n;
  return std::int64_t(E.structure.q()) * n - std::int64_t(E.size());
}

enum class SumDomain { SetOnly, WholeSpace };

/// sum over the domain of |s_sum(x)|^2, exact.
inline Int s_l2(const PointSet& E, Element alpha, SumDomain domain,
                std::uint64_t limit = kDefaultEnumerationLimit) {
  E.structure.check(alpha);
  const auto term = [&](const Point& x) {
    const __int128 v = s_sum(E, x, alpha);
    return static_cast<unsigned __int128>(v * v);
  };
  unsigned __int128 acc = 0;
  if (domain == SumDomain::SetOnly) {
    for (const auto& x : E.points) acc += term(x);
  } else {
    const std::uint64_t n = checked_space_size(E.structure.q(), E.dim, limit);
    for (std::uint64_t i = 0; i < n; ++i) acc += term(point_from_index(E.structure, E.dim, i));
  }
  return int_from_u128(acc);
}

/// The two-constraint character sum over consecutive links, reduced by
/// inclusion-exclusion to q^2 C2 - q |E| (N_a + N_b) + |E|^3 where C2 is the
/// all-tuples 2-chain count and N the pair counts.
inline Int t_sum(const PointSet& E, Element alpha_first, Element alpha_second) {
  E.structure.check(alpha_first);
  E.structure.check(alpha_second);
  if (E.size() == 0) return 0;
  const Int q = E.structure.q();
  const Int size = E.size();
  const Int c2 =
      count_chains_dp(E, ChainSpec{{alpha_first, alpha_second}, Distinctness::AllTuples}).count;
  const Int n_a = pair_count(E, alpha_first);
  const Int n_b = pair_count(E, alpha_second);
  return q * q * c2 - q * size * (n_a + n_b) + size * size * size;
}

/// Exact orthogonality decomposition of q^k * (all-tuples count) into one
/// scaled term per auxiliary-variable support set J in {1..k}. Bit i-1 of a
/// mask stands for constraint i.
struct DecompositionReport {
  std::uint32_t k = 0;
  std::uint32_t q = 0;
  std::uint64_t set_size = 0;
  Int scaled_total;                     // q^k * chain count
  Int main_term_scaled;                 // |E|^{k+1}, the J = {} term
  std::map<std::uint32_t, Int> scaled_terms;  // mask -> q^k * R_J
  std::vector<Rational> grouped;        // R_n = sum_{|J| = n} R_J / q^k
  bool reconstructed = false;           // sum of terms == scaled_total
};

inline constexpr std::uint32_t kMaxDecomposeK = 16;

inline DecompositionReport decompose(const PointSet& E, const ChainSpec& spec) {
  if (spec.policy != Distinctness::AllTuples)
    throw std::invalid_argument("decompose uses all-tuples semantics");
  detail::check_alphas(E, spec);
  const std::uint32_t k = spec.k();
  if (k > kMaxDecomposeK)
    throw std::invalid_argument("decompose supports k <= " + std::to_string(kMaxDecomposeK));

  const std::uint64_t n = E.size();
  const Int q = E.structure.q();

  DecompositionReport rep;
  rep.k = k;
  rep.q = E.structure.q();
  rep.set_size = n;
  rep.main_term_scaled = ipow(Int(n), k + 1);
  rep.scaled_total = ipow(q, k) * count_chains_dp(E, ChainSpec{spec.alphas, Distinctness::AllTuples}).count;

  // All-tuples counts of every contiguous sub-chain alpha_a..alpha_b.
  std::vector<std::vector<Int>> interval(k, std::vector<Int>(k));
  for (std::uint32_t a = 0; a < k; ++a) {
    for (std::uint32_t b = a; b < k; ++b) {
      const std::vector<Element> sub(spec.alphas.begin() + a, spec.alphas.begin() + b + 1);
      interval[a][b] = count_chains_dp(E, ChainSpec{sub, Distinctness::AllTuples}).count;
    }
  }

  // F(J') = q^{|J'|} * #{tuples satisfying exactly the constraints in J'};
  // the tuple count splits over maximal runs of J', free points contribute
  // |E| each.
  const std::uint32_t masks = 1u << k;
  std::vector<Int> constrained(masks);
  for (std::uint32_t m = 0; m < masks; ++m) {
    Int prod = 1;
    std::uint32_t touched = 0;
    std::uint32_t i = 0;
    while (i < k) {
      if (!(m >> i & 1)) {
        ++i;
        continue;
      }
      std::uint32_t j = i;
      while (j + 1 < k && (m >> (j + 1) & 1)) ++j;
      prod *= interval[i][j];
      touched += (j - i + 2);  // points x_i .. x_{j+1}
      i = j + 1;
    }
    constrained[m] = prod * ipow(Int(n), (k + 1) - touched) *
                     ipow(q, static_cast<std::uint32_t>(__builtin_popcount(m)));
  }

  Int sum = 0;
  rep.grouped.assign(k + 1, Rational(0));
  const Int qk = ipow(q, k);
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    // inclusion-exclusion over subsets: converts `s_i ranges over all of the
    // ring` into `s_i != 0` on exactly the constraints in `mask`
    Int term = 0;
    std::uint32_t sub = mask;
    for (;;) {
      const int sign = (__builtin_popcount(mask) - __builtin_popcount(sub)) % 2 ? -1 : 1;
      term += sign * constrained[sub];
      if (sub == 0) break;
      sub = (sub - 1) & mask;
    }
    rep.scaled_terms[mask] = term;
    rep.grouped[__builtin_popcount(mask)] += Rational(term, qk);
    sum += term;
  }
  rep.reconstructed = sum == rep.scaled_total;
  return rep;
}

}  // namespace kchain
