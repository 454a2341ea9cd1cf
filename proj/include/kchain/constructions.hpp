#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "kchain/pointset.hpp"

namespace kchain {

/// Union of the first two coordinate axes embedded in dimension d >= 2:
/// {(x,0,..)} u {(0,y,0,..)}. |E| = 2q - 1 (the origin is shared). Every
/// cross pair between the axes has dot product zero.
inline PointSet axes_set(const AlgebraicStructure& S, std::uint32_t d) {
  if (d < 2) throw std::invalid_argument("axes_set needs d >= 2");
  std::vector<Point> pts;
  for (Element x = 0; x < S.q(); ++x) {
    Point p(d, 0);
    p[0] = x;
    pts.push_back(std::move(p));
  }
  for (Element y = 0; y < S.q(); ++y) {
    Point p(d, 0);
    p[1] = y;
    pts.push_back(std::move(p));
  }
  return make_pointset(S, d, std::move(pts));
}

/// {(x,0,alpha)} u {(0,y,1)} in dimension 3. Cross pairs have dot product
/// alpha in either order. |E| = 2q, except alpha = 1 where (0,0,1) lies in
/// both families and |E| = 2q - 1.
inline PointSet shifted_lines_set(const AlgebraicStructure& S, Element alpha) {
  if (!S.is_field()) throw std::invalid_argument("shifted_lines_set expects a field structure");
  S.check(alpha);
  std::vector<Point> pts;
  for (Element x = 0; x < S.q(); ++x) pts.push_back({x, 0, alpha});
  for (Element y = 0; y < S.q(); ++y) pts.push_back({0, y, S.one()});
  return make_pointset(S, 3, std::move(pts));
}

/// The three-family ring construction in Z_{p^l}^2 with l >= 2:
/// X = {(ap, alpha)}, Y = {(bp^{l-1}, 1)}, Z = {(cp, beta)} over a, b, c in
/// Z_p. Every (x, y, z) in X x Y x Z satisfies x.y = alpha and y.z = beta, so
/// the (alpha, beta) 2-chain count is at least p^3 while |E| = 3p.
struct ErratumFamily {
  PointSet combined;
  std::vector<Point> x_family, y_family, z_family;
};

inline ErratumFamily erratum_family(const AlgebraicStructure& S, Element alpha, Element beta) {
  if (S.kind() != StructureKind::IntegerRing || S.e() < 2)
    throw std::invalid_argument("erratum_family needs Z:p^l with l >= 2");
  S.check(alpha);
  S.check(beta);
  if (!S.is_unit(alpha) || !S.is_unit(beta))
    throw std::invalid_argument("alpha and beta must be units");
  if (alpha == beta) throw std::invalid_argument("alpha and beta must be distinct");
  if (alpha == 1 || beta == 1) throw std::invalid_argument("alpha and beta must differ from 1");

  const std::uint32_t p = S.p();
  std::uint32_t p_pow = 1;  // p^{l-1}
  for (std::uint32_t i = 1; i < S.e(); ++i) p_pow *= p;

  ErratumFamily fam;
  std::vector<Point> pts;
  for (std::uint32_t a = 0; a < p; ++a) {
    fam.x_family.push_back({static_cast<Element>(a * p), alpha});
    fam.y_family.push_back({static_cast<Element>(a * p_pow), S.one()});
    fam.z_family.push_back({static_cast<Element>(a * p), beta});
  }
  for (const auto* fam_pts : {&fam.x_family, &fam.y_family, &fam.z_family})
    pts.insert(pts.end(), fam_pts->begin(), fam_pts->end());
  fam.combined = make_pointset(S, 2, std::move(pts));
  return fam;
}

inline PointSet erratum_family_set(const AlgebraicStructure& S, Element alpha, Element beta) {
  return erratum_family(S, alpha, beta).combined;
}

/// The "line" {y in S^2 : v.y = alpha}. Over Z_{p^l} two distinct such sets
/// can share several points; over a field they share at most one.
struct LineSet {
  Point v;
  Element alpha = 0;
  std::vector<Point> points;  // lexicographic order
};

inline LineSet line_points(const AlgebraicStructure& S, const Point& v, Element alpha,
                           std::uint64_t limit = kDefaultEnumerationLimit) {
  if (v.size() != 2) throw std::invalid_argument("line_points works in dimension 2");
  for (Element c : v) S.check(c);
  S.check(alpha);
  LineSet line;
  line.v = v;
  line.alpha = alpha;
  const std::uint32_t q = S.q();
  // solve for the coordinate with a unit multiplier when one exists
  if (S.is_unit(v[1])) {
    const Element inv = S.inverse(v[1]);
    for (Element y0 = 0; y0 < q; ++y0)
      line.points.push_back({y0, S.mul(inv, S.sub(alpha, S.mul(v[0], y0)))});
  } else if (S.is_unit(v[0])) {
    const Element inv = S.inverse(v[0]);
    for (Element y1 = 0; y1 < q; ++y1)
      line.points.push_back({S.mul(inv, S.sub(alpha, S.mul(v[1], y1))), y1});
  } else {
    checked_space_size(q, 2, limit);
    for (Element y0 = 0; y0 < q; ++y0)
      for (Element y1 = 0; y1 < q; ++y1)
        if (S.dot(v, {y0, y1}) == alpha) line.points.push_back({y0, y1});
  }
  std::sort(line.points.begin(), line.points.end());
  return line;
}

/// The Z_9^2 counterexample to "two lines sharing more than one point must
/// coincide": L_2((3,2)) and L_4((3,4)) are distinct 9-point lines meeting in
/// exactly {(0,1),(3,1),(6,1)}.
struct ErratumReport {
  LineSet line_v, line_w;
  std::vector<Point> intersection;
  std::vector<Point> expected_line_v, expected_line_w, expected_intersection;
  bool lines_match_expected = false;
  bool intersection_matches = false;
  bool lines_differ = false;
  bool pass = false;
};

inline ErratumReport erratum_counterexample() {
  const auto S = AlgebraicStructure::integer_ring(3, 2);
  ErratumReport rep;
  rep.line_v = line_points(S, {3, 2}, 2);
  rep.line_w = line_points(S, {3, 4}, 4);
  std::set_intersection(rep.line_v.points.begin(), rep.line_v.points.end(),
                        rep.line_w.points.begin(), rep.line_w.points.end(),
                        std::back_inserter(rep.intersection));
  rep.expected_line_v = {{0, 1}, {1, 4}, {2, 7}, {3, 1}, {4, 4}, {5, 7}, {6, 1}, {7, 4}, {8, 7}};
  rep.expected_line_w = {{0, 1}, {1, 7}, {2, 4}, {3, 1}, {4, 7}, {5, 4}, {6, 1}, {7, 7}, {8, 4}};
  rep.expected_intersection = {{0, 1}, {3, 1}, {6, 1}};
  rep.lines_match_expected =
      rep.line_v.points == rep.expected_line_v && rep.line_w.points == rep.expected_line_w;
  rep.intersection_matches = rep.intersection == rep.expected_intersection;
  rep.lines_differ = rep.line_v.points != rep.line_w.points;
  rep.pass = rep.lines_match_expected && rep.intersection_matches && rep.lines_differ &&
             rep.intersection.size() == 3;
  return rep;
}

/// Field-plane sanity counterpart: over F_q^2, any two of these line sets
/// with nonzero normals either coincide or meet in at most one point.
/// Exhaustive over all (v, alpha), (w, beta) pairs.
inline bool field_lines_intersect_in_at_most_one_point(const AlgebraicStructure& S,
                                                       std::uint64_t limit = kDefaultEnumerationLimit) {
  if (!S.is_field()) throw std::invalid_argument("field structure expected");
  const std::uint32_t q = S.q();
  std::vector<LineSet> lines;
  for (Element v0 = 0; v0 < q; ++v0)
    for (Element v1 = 0; v1 < q; ++v1) {
      if (v0 == 0 && v1 == 0) continue;
      for (Element a = 0; a < q; ++a) lines.push_back(line_points(S, {v0, v1}, a, limit));
    }
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i].points == lines[j].points) continue;
      std::vector<Point> common;
      std::set_intersection(lines[i].points.begin(), lines[i].points.end(),
                            lines[j].points.begin(), lines[j].points.end(),
                            std::back_inserter(common));
      if (common.size() > 1) return false;
    }
  return true;
}

}  // namespace kchain
