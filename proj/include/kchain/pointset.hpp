#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kchain/numeric.hpp"
#include "kchain/rng.hpp"
#include "kchain/structure.hpp"

namespace kchain {

using Point = std::vector<Element>;

/// Cap on q^d for whole-space enumeration (sampling, L2 sums, line scans).
inline constexpr std::uint64_t kDefaultEnumerationLimit = 1u << 20;

/// A duplicate-free set E of d-dimensional points, kept in lexicographic
/// coordinate order so every downstream count is order-independent.
/// Immutable by convention after construction.
struct PointSet {
  AlgebraicStructure structure;
  std::uint32_t dim = 1;
  std::vector<Point> points;
  bool had_duplicates = false;

  std::size_t size() const { return points.size(); }

  bool contains(const Point& x) const {
    return std::binary_search(points.begin(), points.end(), x);
  }
};

inline PointSet make_pointset(AlgebraicStructure structure, std::uint32_t dim,
                              std::vector<Point> pts) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  for (const auto& pt : pts) {
    if (pt.size() != dim)
      throw std::invalid_argument("point has " + std::to_string(pt.size()) +
                                  " coordinates, expected " + std::to_string(dim));
    for (Element c : pt) structure.check(c);
  }
  std::sort(pts.begin(), pts.end());
  const auto last = std::unique(pts.begin(), pts.end());
  const bool dups = last != pts.end();
  pts.erase(last, pts.end());
  PointSet out;
  out.structure = std::move(structure);
  out.dim = dim;
  out.points = std::move(pts);
  out.had_duplicates = dups;
  return out;
}

/// File format: first content line `<structure-literal> <d>`, then one point
/// per line as d whitespace-separated reprs. `#` starts a comment.
inline PointSet parse_pointset(const std::string& text,
                               std::uint64_t max_q = kDefaultMaxCardinality) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::optional<AlgebraicStructure> structure;
  std::uint32_t dim = 0;
  std::vector<Point> pts;

  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    if (!structure) {
      std::string literal;
      if (!(row >> literal)) continue;  // blank or comment-only line before the header
      long d_signed = 0;
      if (!(row >> d_signed) || d_signed < 1)
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": malformed header, expected `<structure> <d>`");
      std::string extra;
      if (row >> extra)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": trailing junk in header");
      structure = AlgebraicStructure::from_literal(literal, max_q);
      dim = static_cast<std::uint32_t>(d_signed);
      continue;
    }
    Point pt;
    long long v = 0;
    while (row >> v) {
      if (v < 0 || static_cast<std::uint64_t>(v) >= structure->q())
        throw std::invalid_argument("line " + std::to_string(lineno) + ": coordinate " +
                                    std::to_string(v) + " out of range [0, " +
                                    std::to_string(structure->q()) + ")");
      pt.push_back(static_cast<Element>(v));
    }
    if (!row.eof())
      throw std::invalid_argument("line " + std::to_string(lineno) + ": non-integer token");
    if (pt.empty()) continue;
    if (pt.size() != dim)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(dim) + " coordinates, got " +
                                  std::to_string(pt.size()));
    pts.push_back(std::move(pt));
  }
  if (!structure) throw std::invalid_argument("missing header line `<structure> <d>`");
  return make_pointset(*structure, dim, std::move(pts));
}

/// Canonical form: header plus points in lexicographic order, LF newlines.
inline std::string serialize_pointset(const PointSet& E) {
  std::ostringstream out;
  out << E.structure.literal() << ' ' << E.dim << '\n';
  for (const auto& pt : E.points) {
    for (std::size_t i = 0; i < pt.size(); ++i) out << (i ? " " : "") << pt[i];
    out << '\n';
  }
  return out.str();
}

/// index -> point, big-endian base-q digits, so ascending indices enumerate
/// the space in canonical (lexicographic) order.
inline Point point_from_index(const AlgebraicStructure& S, std::uint32_t dim, std::uint64_t index) {
  Point pt(dim);
  for (std::uint32_t i = dim; i-- > 0;) {
    pt[i] = static_cast<Element>(index % S.q());
    index /= S.q();
  }
  return pt;
}

inline PointSet enumerate_space(const AlgebraicStructure& S, std::uint32_t dim,
                                std::uint64_t limit = kDefaultEnumerationLimit) {
  const std::uint64_t n = checked_space_size(S.q(), dim, limit);
  PointSet out;
  out.structure = S;
  out.dim = dim;
  out.points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.points.push_back(point_from_index(S, dim, i));
  return out;
}

/// Uniform n-subset of the whole space, drawn without replacement by a
/// partial Fisher-Yates shuffle over point indices seeded with SplitMix64.
/// Identical (S, d, n, seed) give identical sets on every platform.
inline PointSet sample_uniform(const AlgebraicStructure& S, std::uint32_t dim, std::uint64_t n,
                               std::uint64_t seed,
                               std::uint64_t limit = kDefaultEnumerationLimit) {
  const std::uint64_t space = checked_space_size(S.q(), dim, limit);
  if (n > space)
    throw std::invalid_argument("sample size " + std::to_string(n) + " exceeds q^d = " +
                                std::to_string(space));
  std::vector<std::uint64_t> idx(space);
  std::iota(idx.begin(), idx.end(), std::uint64_t{0});
  SplitMix64 gen(seed);
  for (std::uint64_t i = 0; i < n; ++i)
    std::swap(idx[i], idx[i + gen.below(space - i)]);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) pts.push_back(point_from_index(S, dim, idx[i]));
  return make_pointset(S, dim, std::move(pts));
}

}  // namespace kchain
