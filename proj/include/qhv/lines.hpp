#pragma once

// Lines fully contained in a point set, and the per-point line census.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qhv/error.hpp"
#include "qhv/parallel.hpp"
#include "qhv/pointset.hpp"
#include "qhv/projgeom.hpp"
#include "qhv/variety.hpp"

namespace qhv {

struct LineSystem {
  std::vector<ProjLine> lines;                  // ascending canonical key
  std::vector<std::vector<PointIndex>> points;  // sorted points of each line

  std::size_t size() const { return lines.size(); }
};

namespace detail {

inline LineSystem finish_lines(const ProjectiveSpace& space, std::vector<ProjLine> lines) {
  std::sort(lines.begin(), lines.end(), [&](const ProjLine& a, const ProjLine& b) {
    return space.line_key(a) < space.line_key(b);
  });
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  LineSystem out;
  out.points.reserve(lines.size());
  for (const auto& l : lines) {
    auto pts = space.points_on_line(l);
    std::sort(pts.begin(), pts.end());
    out.points.push_back(std::move(pts));
  }
  out.lines = std::move(lines);
  return out;
}

inline bool line_inside(const ProjectiveSpace& space, const PointSet& s, const ProjLine& l) {
  if (!s.contains(space.index_of(l.rows[1]))) return false;
  for (std::uint32_t t = 0; t < space.s(); ++t)
    if (!s.contains(space.index_of(space.axpy(l.rows[0], Fe{t}, l.rows[1])))) return false;
  return true;
}

}  // namespace detail

// Every line of PG(3,q^2) tested point by point. Reference method, feasible
// for q <= 5.
inline LineSystem contained_lines_fullscan(const ProjectiveSpace& space, const PointSet& s) {
  std::vector<ProjLine> found;
  space.for_each_line([&](const ProjLine& l) {
    if (detail::line_inside(space, s, l)) found.push_back(l);
  });
  return detail::finish_lines(space, std::move(found));
}

// Every line meets the plane J = 0, so a contained line passes through a
// point of S at infinity. Lines inside the plane are scanned directly. For
// the affine lines through an infinity point P with direction d, the affine
// points of S are bucketed by their projection along d; a bucket holding all
// s affine points of its line is a contained line.
inline LineSystem contained_lines(const ProjectiveSpace& space, const PointSet& s, unsigned threads = 1) {
  const auto& f = space.field();
  const std::uint32_t sz = space.s();
  std::vector<ProjLine> found;
  space.for_each_line_at_infinity([&](const ProjLine& l) {
    if (detail::line_inside(space, s, l)) found.push_back(l);
  });

  std::vector<PointIndex> at_inf;
  std::vector<Coords> affine;
  s.for_each([&](PointIndex i) {
    if (i < space.affine_offset())
      at_inf.push_back(i);
    else
      affine.push_back(space.coords_at(i));
  });

  threads = std::max(1u, threads);
  std::vector<std::vector<ProjLine>> partial(threads);
  parallel_chunks(at_inf.size(), threads, [&](unsigned w, std::size_t b, std::size_t e) {
    std::vector<std::uint32_t> count(static_cast<std::size_t>(sz) * sz);
    std::vector<std::uint32_t> rep(static_cast<std::size_t>(sz) * sz);
    for (std::size_t k = b; k < e; ++k) {
      const Coords dir = space.coords_at(at_inf[k]);
      // Direction (dx,dy,dz) sits in coordinates X..Z; its first nonzero is 1.
      const int piv = ProjectiveSpace::pivot_of(dir);
      std::array<int, 2> rest{};
      for (int c = 1, j = 0; c < 4; ++c)
        if (c != piv) rest[j++] = c;
      std::fill(count.begin(), count.end(), 0);
      for (std::uint32_t a = 0; a < affine.size(); ++a) {
        const Coords& v = affine[a];
        const Fe t = v[piv];
        const Fe u = f.sub(v[rest[0]], f.mul(t, dir[rest[0]]));
        const Fe w2 = f.sub(v[rest[1]], f.mul(t, dir[rest[1]]));
        const std::size_t key = static_cast<std::size_t>(u.v) * sz + w2.v;
        if (count[key]++ == 0) rep[key] = a;
      }
      for (std::size_t key = 0; key < count.size(); ++key) {
        if (count[key] == sz) partial[w].push_back(space.line_through(dir, affine[rep[key]]));
      }
    }
  });
  for (auto& p : partial) found.insert(found.end(), p.begin(), p.end());
  return detail::finish_lines(space, std::move(found));
}

// Point -> contained lines through it, compressed over the whole index range.
class PointLineIncidence {
 public:
  PointLineIncidence(PointIndex universe, const LineSystem& ls) : offsets_(static_cast<std::size_t>(universe) + 1, 0) {
    for (const auto& pts : ls.points)
      for (auto p : pts) ++offsets_[p + 1];
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    ids_.resize(offsets_.back());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::uint32_t l = 0; l < ls.points.size(); ++l)
      for (auto p : ls.points[l]) ids_[fill[p]++] = l;
  }

  std::span<const std::uint32_t> lines_through(PointIndex p) const {
    return {ids_.data() + offsets_[p], ids_.data() + offsets_[p + 1]};
  }
  std::uint32_t count(PointIndex p) const { return offsets_[p + 1] - offsets_[p]; }

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> ids_;
};

// count of contained lines through a point -> number of such points
using CountHistogram = std::map<std::uint32_t, std::uint64_t>;

struct LineCensus {
  std::size_t line_count = 0;
  std::vector<PointIndex> points;     // points of S, ascending
  std::vector<std::uint32_t> counts;  // contained lines through points[i]
  std::map<std::string, CountHistogram> profile;
  bool double_count_ok = false;

  std::uint32_t count_at(PointIndex p) const {
    auto it = std::lower_bound(points.begin(), points.end(), p);
    if (it == points.end() || *it != p) throw DomainError("point not in the censused set");
    return counts[static_cast<std::size_t>(it - points.begin())];
  }
};

// Profile labels: M -> omega0..omega3; B -> P_inf, B_inf (B at infinity minus
// P_inf), affine; anything else -> infinity, affine.
inline LineCensus line_census(const ProjectiveSpace& space, const PointSet& s, const LineSystem& ls,
                              const BMParams* prm = nullptr) {
  LineCensus c;
  c.line_count = ls.size();
  const PointLineIncidence inc(space.point_count(), ls);
  c.points = s.indices();
  c.counts.reserve(c.points.size());
  std::uint64_t total = 0;
  for (auto p : c.points) {
    c.counts.push_back(inc.count(p));
    total += inc.count(p);
  }
  c.double_count_ok = total == static_cast<std::uint64_t>(ls.size()) * space.points_per_line();

  const PointIndex pinf = space.index_of(BMParams::p_inf());
  std::optional<OmegaPartition> omega;
  if (s.kind() == SetKind::M && prm) omega = omega_partition(space, *prm);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const PointIndex p = c.points[i];
    std::string label;
    if (omega) {
      const int k = omega->label_of(p);
      label = k < 0 ? "outside" : "omega" + std::to_string(k);
    } else if (s.kind() == SetKind::B) {
      label = p == pinf ? "P_inf" : (p < space.affine_offset() ? "B_inf" : "affine");
    } else {
      label = p < space.affine_offset() ? "infinity" : "affine";
    }
    ++c.profile[label][c.counts[i]];
  }
  return c;
}

namespace detail {

inline bool on_ell(const BMParams& prm, const Coords& c, bool second) {
  const auto& f = prm.f();
  if (!c[J].is_zero()) return false;
  const Fe nv = f.mul(prm.nu, c[Y]);
  return (second ? f.add(c[X], nv) : f.sub(c[X], nv)).is_zero();
}

inline PointIndex infinity_point(const ProjectiveSpace& space, const std::vector<PointIndex>& pts) {
  for (auto p : pts)
    if (p < space.affine_offset()) return p;
  throw InvariantViolation("line without a point at infinity");
}

}  // namespace detail

struct PencilReport {
  Hyperplane plane;
  bool coplanar = false;
  std::size_t lines = 0;         // contained lines through the point
  std::size_t affine_lines = 0;  // those not inside J = 0
};

// The q+1 contained lines through a point of (l1 u l2) \ {P_inf}, q = 1 mod 4.
inline PencilReport pencil_check(const ProjectiveSpace& space, const BMParams& prm, const LineSystem& ls,
                                 const PointLineIncidence& inc, const Coords& point) {
  if (!prm.q_is_1_mod_4()) throw DomainError("pencil check needs q = 1 mod 4");
  const Coords l = space.normalize(point);
  if (l == BMParams::p_inf() || !(detail::on_ell(prm, l, false) || detail::on_ell(prm, l, true)))
    throw DomainError("pencil check needs a point of (l1 u l2) minus P_inf");
  const PointIndex li = space.index_of(l);
  const auto through = inc.lines_through(li);
  PencilReport r;
  r.lines = through.size();
  for (auto id : through)
    if (ls.points[id].back() >= space.affine_offset()) ++r.affine_lines;
  if (through.size() < 2) return r;
  const auto& first = ls.lines[through[0]];
  PointIndex other = ls.points[through[1]].front() == li ? ls.points[through[1]][1] : ls.points[through[1]].front();
  r.plane = space.plane_through(first, space.coords_at(other));
  r.coplanar = through.size() == prm.f().q() + 1;
  for (auto id : through) r.coplanar = r.coplanar && space.line_in_hyperplane(ls.lines[id], r.plane);
  return r;
}

struct RiReport {
  PointIndex on_ell1;  // infinity point of the line r_1(P)
  PointIndex on_ell2;
};

// For an affine point of M (q = 1 mod 4) the two contained lines through it
// meet l1 \ {P_inf} and l2 \ {P_inf}, one each.
inline RiReport ri_incidence_check(const ProjectiveSpace& space, const BMParams& prm, const LineSystem& ls,
                                   const PointLineIncidence& inc, const Coords& point) {
  if (!prm.q_is_1_mod_4()) throw DomainError("r_i check needs q = 1 mod 4");
  if (point[J].is_zero() || !member_M(prm, point)) throw DomainError("r_i check needs an affine point of M");
  const PointIndex pi = space.index_of_vector(point);
  const auto through = inc.lines_through(pi);
  if (through.size() != 2)
    throw InvariantViolation("affine point of M on " + std::to_string(through.size()) + " contained lines, expected 2");
  const PointIndex pinf = space.index_of(BMParams::p_inf());
  std::array<PointIndex, 2> hit{};
  for (int k = 0; k < 2; ++k) hit[k] = detail::infinity_point(space, ls.points[through[k]]);
  auto on = [&](PointIndex p, bool second) {
    return p != pinf && detail::on_ell(prm, space.coords_at(p), second);
  };
  if (on(hit[0], false) && on(hit[1], true)) return {hit[0], hit[1]};
  if (on(hit[1], false) && on(hit[0], true)) return {hit[1], hit[0]};
  throw InvariantViolation("contained lines through an affine point do not meet l1 and l2 separately");
}

}  // namespace qhv
