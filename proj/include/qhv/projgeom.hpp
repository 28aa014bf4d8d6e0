#pragma once

// Points, lines and hyperplanes of PG(3, s), s = q^2, with dense indexing.
//
// A point is stored normalized: its first nonzero coordinate in (J,X,Y,Z)
// equals 1. Indices follow the lexicographic order of normalized coordinate
// tuples under the canonical field order:
//
//   (0,0,0,1)                      -> 0
//   (0,0,1,z)                      -> 1 + z
//   (0,1,y,z)                      -> 1 + s + y*s + z
//   (1,x,y,z)                      -> 1 + s + s^2 + x*s^2 + y*s + z
//
// Hyperplanes use the same normalization and indexing on their dual
// coordinates. A line is the reduced row-echelon basis of its 2-dimensional
// subspace; both RREF rows are normalized points, so the pair of their
// indices is a canonical key.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qhv/error.hpp"
#include "qhv/field.hpp"

namespace qhv {

using PointIndex = std::uint32_t;
using Coords = std::array<Fe, 4>;

enum Coord : int { J = 0, X = 1, Y = 2, Z = 3 };

struct ProjPoint {
  Coords c{};
  bool operator==(const ProjPoint&) const = default;
  bool at_infinity() const { return c[J].is_zero(); }
};

struct Hyperplane {
  Coords c{};
  bool operator==(const Hyperplane&) const = default;
};

struct ProjLine {
  std::array<Coords, 2> rows{};  // RREF basis
  bool operator==(const ProjLine&) const = default;
};

class ProjectiveSpace {
 public:
  explicit ProjectiveSpace(FieldPtr field) : field_(std::move(field)) {
    s_ = field_->order();
    const std::uint64_t s = s_;
    const std::uint64_t total = s * s * s + s * s + s + 1;
    if (total > 0xFFFFFFFFull) throw DomainError("PG(3,q^2) too large for 32-bit point indices");
    count_ = static_cast<PointIndex>(total);
    affine_offset_ = static_cast<PointIndex>(1 + s + s * s);
  }

  const GaloisField& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::uint32_t s() const { return s_; }

  PointIndex point_count() const { return count_; }
  PointIndex hyperplane_count() const { return count_; }
  // Indices >= affine_offset() are exactly the points with J = 1.
  PointIndex affine_offset() const { return affine_offset_; }
  std::uint64_t line_count() const {
    const std::uint64_t s = s_;
    return (s * s + 1) * (s * s + s + 1);
  }
  std::uint32_t points_per_line() const { return s_ + 1; }
  std::uint32_t points_per_hyperplane() const { return s_ * s_ + s_ + 1; }

  // Scales v so its first nonzero coordinate is 1.
  Coords normalize(const Coords& v) const {
    const auto& f = *field_;
    for (int i = 0; i < 4; ++i) {
      if (v[i].is_zero()) continue;
      if (v[i] == GaloisField::one()) return v;
      const Fe inv = f.inv(v[i]);
      Coords out{};
      for (int k = i; k < 4; ++k) out[k] = f.mul(v[k], inv);
      return out;
    }
    throw DegenerateInput("zero vector is not a projective point");
  }

  ProjPoint point(const Coords& v) const { return ProjPoint{normalize(v)}; }

  // Index of a normalized tuple.
  PointIndex index_of(const Coords& c) const {
    const std::uint32_t s = s_;
    if (!c[J].is_zero()) return affine_offset_ + (c[X].v * s + c[Y].v) * s + c[Z].v;
    if (!c[X].is_zero()) return 1 + s + c[Y].v * s + c[Z].v;
    if (!c[Y].is_zero()) return 1 + c[Z].v;
    return 0;
  }
  PointIndex index_of(const ProjPoint& p) const { return index_of(p.c); }
  PointIndex index_of(const Hyperplane& h) const { return index_of(h.c); }

  // Index of any nonzero representative.
  PointIndex index_of_vector(const Coords& v) const { return index_of(normalize(v)); }

  Coords coords_at(PointIndex idx) const {
    if (idx >= count_) throw DomainError("point index out of range");
    const std::uint32_t s = s_;
    const Fe one = GaloisField::one();
    if (idx >= affine_offset_) {
      std::uint32_t r = idx - affine_offset_;
      const Fe z{r % s};
      r /= s;
      const Fe y{r % s};
      return {one, Fe{r / s}, y, z};
    }
    if (idx >= 1 + s) {
      const std::uint32_t r = idx - 1 - s;
      return {Fe{}, one, Fe{r / s}, Fe{r % s}};
    }
    if (idx >= 1) return {Fe{}, Fe{}, one, Fe{idx - 1}};
    return {Fe{}, Fe{}, Fe{}, one};
  }
  ProjPoint point_at(PointIndex idx) const { return ProjPoint{coords_at(idx)}; }
  Hyperplane hyperplane_at(PointIndex idx) const { return Hyperplane{coords_at(idx)}; }

  template <class Fn>
  void for_each_point(Fn&& fn) const {
    for (PointIndex i = 0; i < count_; ++i) fn(i, coords_at(i));
  }

  Fe evaluate(const Hyperplane& h, const Coords& v) const {
    const auto& f = *field_;
    Fe acc{};
    for (int i = 0; i < 4; ++i) acc = f.add(acc, f.mul(h.c[i], v[i]));
    return acc;
  }
  bool incident(const Hyperplane& h, const Coords& v) const { return evaluate(h, v).is_zero(); }

  // RREF of the span of two vectors; throws if they are dependent.
  ProjLine line_through(const Coords& a, const Coords& b) const {
    const auto& f = *field_;
    std::array<Coords, 2> m{normalize(a), b};
    // Row 0 leads at its first nonzero column; clear that column in row 1.
    const int c0 = pivot_of(m[0]);
    m[1] = axpy(m[1], f.neg(m[1][c0]), m[0]);
    int c1 = -1;
    for (int i = 0; i < 4; ++i)
      if (!m[1][i].is_zero()) {
        c1 = i;
        break;
      }
    if (c1 < 0) throw DegenerateInput("line_through needs two distinct points");
    m[1] = normalize(m[1]);
    if (c1 < c0) std::swap(m[0], m[1]);
    const int p0 = pivot_of(m[0]);
    const int p1 = pivot_of(m[1]);
    // Clear row 1's pivot column out of row 0 and row 0's pivot out of row 1.
    m[0] = axpy(m[0], f.neg(m[0][p1]), m[1]);
    m[1] = axpy(m[1], f.neg(m[1][p0]), m[0]);
    return ProjLine{{m[0], m[1]}};
  }
  ProjLine line_through(const ProjPoint& a, const ProjPoint& b) const { return line_through(a.c, b.c); }

  // Canonical 64-bit key of a line (indices of its two RREF rows).
  std::uint64_t line_key(const ProjLine& l) const {
    return (static_cast<std::uint64_t>(index_of(l.rows[0])) << 32) | index_of(l.rows[1]);
  }

  // The s+1 points of a line: row 1 first, then row0 + t*row1 for t ascending.
  std::vector<PointIndex> points_on_line(const ProjLine& l) const {
    std::vector<PointIndex> out;
    out.reserve(s_ + 1);
    for_each_point_on_line(l, [&](const Coords& c) { out.push_back(index_of(c)); });
    return out;
  }

  template <class Fn>
  void for_each_point_on_line(const ProjLine& l, Fn&& fn) const {
    fn(l.rows[1]);
    for (std::uint32_t t = 0; t < s_; ++t) fn(axpy(l.rows[0], Fe{t}, l.rows[1]));
  }

  bool line_in_hyperplane(const ProjLine& l, const Hyperplane& h) const {
    return incident(h, l.rows[0]) && incident(h, l.rows[1]);
  }

  // Hyperplane spanned by a line and a point off it.
  Hyperplane plane_through(const ProjLine& l, const Coords& p) const {
    // Null vector of the 3x4 matrix with rows l.rows[0], l.rows[1], p.
    const auto& f = *field_;
    std::array<Coords, 3> m{l.rows[0], l.rows[1], p};
    std::array<int, 3> piv{-1, -1, -1};
    int rank = 0;
    for (int col = 0; col < 4 && rank < 3; ++col) {
      int r = -1;
      for (int i = rank; i < 3; ++i)
        if (!m[i][col].is_zero()) {
          r = i;
          break;
        }
      if (r < 0) continue;
      std::swap(m[rank], m[r]);
      const Fe inv = f.inv(m[rank][col]);
      for (auto& e : m[rank]) e = f.mul(e, inv);
      for (int i = 0; i < 3; ++i)
        if (i != rank && !m[i][col].is_zero()) m[i] = axpy(m[i], f.neg(m[i][col]), m[rank]);
      piv[rank++] = col;
    }
    if (rank < 3) throw DegenerateInput("point lies on the line");
    int free_col = 0;
    while (free_col == piv[0] || free_col == piv[1] || free_col == piv[2]) ++free_col;
    Coords h{};
    h[free_col] = GaloisField::one();
    for (int i = 0; i < 3; ++i) h[piv[i]] = f.neg(m[i][free_col]);
    return Hyperplane{normalize(h)};
  }

  std::vector<PointIndex> hyperplane_points(const Hyperplane& h) const {
    std::vector<PointIndex> out;
    out.reserve(points_per_hyperplane());
    for_each_point_on_hyperplane(h.c, [&](PointIndex i) { out.push_back(i); });
    std::sort(out.begin(), out.end());
    return out;
  }

  // Calls fn(index) for every point v with sum h_i v_i = 0. By duality the
  // same routine enumerates the hyperplanes through a point.
  template <class Fn>
  void for_each_point_on_hyperplane(const Coords& h, Fn&& fn) const {
    const auto& f = *field_;
    int k = pivot_of(h);
    const Fe hk_inv = f.inv(h[k]);
    std::array<int, 3> others{};
    for (int i = 0, j = 0; i < 4; ++i)
      if (i != k) others[j++] = i;
    // Free coordinates range over normalized triples of PG(2, s); the pivot
    // coordinate is then forced.
    const std::uint32_t s = s_;
    const Fe one = GaloisField::one();
    auto emit = [&](Fe a, Fe b, Fe c) {
      Coords v{};
      v[others[0]] = a;
      v[others[1]] = b;
      v[others[2]] = c;
      Fe acc = f.add(f.add(f.mul(h[others[0]], a), f.mul(h[others[1]], b)), f.mul(h[others[2]], c));
      v[k] = f.neg(f.mul(acc, hk_inv));
      fn(index_of(normalize(v)));
    };
    emit(Fe{}, Fe{}, one);
    for (std::uint32_t c = 0; c < s; ++c) emit(Fe{}, one, Fe{c});
    for (std::uint32_t b = 0; b < s; ++b)
      for (std::uint32_t c = 0; c < s; ++c) emit(one, Fe{b}, Fe{c});
  }

  // Every line exactly once in RREF, ordered by pivot pattern then by free
  // entries.
  template <class Fn>
  void for_each_line(Fn&& fn) const {
    for_each_line_from(0, fn);
  }

  // The s^2+s+1 lines of the plane at infinity J = 0.
  template <class Fn>
  void for_each_line_at_infinity(Fn&& fn) const {
    for_each_line_from(1, fn);
  }

  // Lines whose first RREF pivot is at column >= first_pivot.
  template <class Fn>
  void for_each_line_from(int first_pivot, Fn&& fn) const {
    const std::uint32_t s = s_;
    const Fe one = GaloisField::one();
    for (int c0 = first_pivot; c0 < 4; ++c0) {
      for (int c1 = c0 + 1; c1 < 4; ++c1) {
        std::vector<int> free0, free1;
        for (int i = c0 + 1; i < 4; ++i)
          if (i != c1) free0.push_back(i);
        for (int i = c1 + 1; i < 4; ++i) free1.push_back(i);
        const int nfree = static_cast<int>(free0.size() + free1.size());
        std::uint64_t combos = 1;
        for (int i = 0; i < nfree; ++i) combos *= s;
        for (std::uint64_t code = 0; code < combos; ++code) {
          ProjLine l{};
          l.rows[0][c0] = one;
          l.rows[1][c1] = one;
          std::uint64_t r = code;
          for (int i = static_cast<int>(free1.size()) - 1; i >= 0; --i) {
            l.rows[1][free1[i]] = Fe{static_cast<std::uint32_t>(r % s)};
            r /= s;
          }
          for (int i = static_cast<int>(free0.size()) - 1; i >= 0; --i) {
            l.rows[0][free0[i]] = Fe{static_cast<std::uint32_t>(r % s)};
            r /= s;
          }
          fn(l);
        }
      }
    }
  }

  template <class Fn>
  void for_each_hyperplane(Fn&& fn) const {
    for (PointIndex i = 0; i < count_; ++i) fn(i, hyperplane_at(i));
  }

  static int pivot_of(const Coords& v) {
    for (int i = 0; i < 4; ++i)
      if (!v[i].is_zero()) return i;
    throw DegenerateInput("zero vector");
  }

  // a + t*b
  Coords axpy(const Coords& a, Fe t, const Coords& b) const {
    const auto& f = *field_;
    Coords out{};
    for (int i = 0; i < 4; ++i) out[i] = f.add(a[i], f.mul(t, b[i]));
    return out;
  }

 private:
  FieldPtr field_;
  std::uint32_t s_ = 0;
  PointIndex count_ = 0;
  PointIndex affine_offset_ = 0;
};

}  // namespace qhv
