#pragma once

// The BM quasi-Hermitian varieties M_{alpha,beta} of PG(3,q^2), q odd:
// the projective variety B_{alpha,beta}, the Hermitian cone F at infinity,
// M = (B \ Sigma_inf) u F, and the classical Hermitian variety H(3,q^2) for
// comparison.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhv/error.hpp"
#include "qhv/field.hpp"
#include "qhv/parallel.hpp"
#include "qhv/pointset.hpp"
#include "qhv/projgeom.hpp"

namespace qhv {

enum class ParamViolation { alpha_zero, beta_in_subfield, degenerate };

inline std::string_view to_string(ParamViolation v) {
  switch (v) {
    case ParamViolation::alpha_zero: return "alpha_zero";
    case ParamViolation::beta_in_subfield: return "beta_in_subfield";
    case ParamViolation::degenerate: return "degenerate";
  }
  return "unknown";
}

struct InvalidParams : Error {
  InvalidParams(ParamViolation v, const std::string& w) : Error(ErrorCode::invalid_params, w), violation(v) {}
  ParamViolation violation;
};

// A parameter pair together with the distinguished objects it determines.
struct BMParams {
  FieldPtr field;
  Fe alpha;
  Fe beta;
  Fe epsilon;  // primitive element used for normalization and "eps^k" I/O
  Fe nu;       // least square root of -1
  bool nu_in_subfield = false;
  bool checked = true;  // false for pairs built with unchecked_params

  const GaloisField& f() const { return *field; }

  static constexpr Coords p_inf() { return {Fe{}, Fe{}, Fe{}, Fe{1}}; }

  // l1: X - nu Y = 0 = J, in RREF.
  ProjLine ell1() const { return ProjLine{{Coords{Fe{}, Fe{1}, f().neg(nu), Fe{}}, p_inf()}}; }
  // l2: X + nu Y = 0 = J, in RREF.
  ProjLine ell2() const { return ProjLine{{Coords{Fe{}, Fe{1}, nu, Fe{}}, p_inf()}}; }

  bool q_is_1_mod_4() const { return field->q() % 4 == 1; }
};

// 4 alpha^(q+1) + (beta^q - beta)^2
inline Fe validity_form(const GaloisField& f, Fe alpha, Fe beta) {
  const Fe d = f.sub(f.conj(beta), beta);
  return f.add(f.mul(f.from_int(4), f.norm(alpha)), f.mul(d, d));
}

inline BMParams unchecked_params(FieldPtr field, Fe alpha, Fe beta, std::optional<Fe> epsilon = {}) {
  if (!field) throw UsageError("null field");
  if (!field->contains(alpha) || !field->contains(beta)) throw UsageError("parameter out of range");
  const Fe eps = epsilon.value_or(field->primitive_element());
  if (!field->is_primitive(eps)) throw DomainError("epsilon override is not a primitive element");
  const auto nu = field->sqrt_minus_one();
  return BMParams{std::move(field), alpha, beta, eps, nu.value, nu.in_subfield, false};
}

inline BMParams validate_params(FieldPtr field, Fe alpha, Fe beta, std::optional<Fe> epsilon = {}) {
  BMParams prm = unchecked_params(std::move(field), alpha, beta, epsilon);
  const auto& f = prm.f();
  if (alpha.is_zero()) throw InvalidParams(ParamViolation::alpha_zero, "alpha must be nonzero");
  if (f.in_subfield(beta)) throw InvalidParams(ParamViolation::beta_in_subfield, "beta must not lie in GF(q)");
  if (validity_form(f, alpha, beta).is_zero())
    throw InvalidParams(ParamViolation::degenerate, "4 alpha^(q+1) + (beta^q - beta)^2 vanishes");
  prm.checked = true;
  return prm;
}

// Projective equation of B_{alpha,beta}, evaluated on any representative:
//   Z^q J^q - Z J^(2q-1) + alpha^q (X^2q + Y^2q) - alpha (X^2 + Y^2) J^(2q-2)
//     = (beta^q - beta)(X^(q+1) + Y^(q+1)) J^(q-1)
inline bool member_B(const BMParams& prm, const Coords& v) {
  const auto& f = prm.f();
  const std::uint64_t q = f.q();
  const Fe j = v[J], x = v[X], y = v[Y], z = v[Z];
  Fe lhs = f.sub(f.mul(f.pow(z, q), f.pow(j, q)), f.mul(z, f.pow(j, 2 * q - 1)));
  lhs = f.add(lhs, f.mul(f.conj(prm.alpha), f.add(f.pow(x, 2 * q), f.pow(y, 2 * q))));
  lhs = f.sub(lhs, f.mul(f.mul(prm.alpha, f.add(f.mul(x, x), f.mul(y, y))), f.pow(j, 2 * q - 2)));
  const Fe rhs = f.mul(f.mul(f.sub(f.conj(prm.beta), prm.beta), f.add(f.norm(x), f.norm(y))), f.pow(j, q - 1));
  return lhs == rhs;
}

// Cone F: J = 0 and X^(q+1) + Y^(q+1) = 0.
inline bool member_F(const BMParams& prm, const Coords& v) {
  const auto& f = prm.f();
  return v[J].is_zero() && f.add(f.norm(v[X]), f.norm(v[Y])).is_zero();
}

inline bool member_M(const BMParams& prm, const Coords& v) {
  return v[J].is_zero() ? member_F(prm, v) : member_B(prm, v);
}

// Affine test: (1,x,y,z) in M iff -alpha(x^2+y^2) + beta(x^(q+1)+y^(q+1)) - z
// lies in GF(q).
inline bool member_M_affine_alt(const BMParams& prm, const Coords& v) {
  const auto& f = prm.f();
  if (v[J].is_zero()) throw DomainError("affine membership test needs J != 0");
  const Fe ji = f.inv(v[J]);
  const Fe x = f.mul(v[X], ji), y = f.mul(v[Y], ji), z = f.mul(v[Z], ji);
  Fe w = f.neg(f.mul(prm.alpha, f.add(f.mul(x, x), f.mul(y, y))));
  w = f.add(w, f.mul(prm.beta, f.add(f.norm(x), f.norm(y))));
  w = f.sub(w, z);
  return f.in_subfield(w);
}

// Diagonal Hermitian surface sum X_i^(q+1) = 0.
inline bool member_H(const GaloisField& f, const Coords& v) {
  Fe acc{};
  for (int i = 0; i < 4; ++i) acc = f.add(acc, f.norm(v[i]));
  return acc.is_zero();
}

namespace detail {

template <class Pred>
PointSet collect(const ProjectiveSpace& space, SetKind kind, unsigned threads, Pred pred) {
  const PointIndex total = space.point_count();
  const std::size_t nwords = (static_cast<std::size_t>(total) + 63) / 64;
  std::vector<std::uint64_t> words(nwords, 0);
  // Workers own disjoint word ranges.
  parallel_chunks(nwords, threads, [&](unsigned, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      std::uint64_t w = 0;
      for (unsigned bit = 0; bit < 64; ++bit) {
        const std::size_t i = k * 64 + bit;
        if (i >= total) break;
        if (pred(space.coords_at(static_cast<PointIndex>(i)))) w |= std::uint64_t{1} << bit;
      }
      words[k] = w;
    }
  });
  return PointSet::from_words(total, kind, std::move(words));
}

}  // namespace detail

inline PointSet build_hermitian(const ProjectiveSpace& space, unsigned threads = 1) {
  const auto& f = space.field();
  return detail::collect(space, SetKind::H, threads, [&](const Coords& c) { return member_H(f, c); });
}

inline PointSet build_point_set(const ProjectiveSpace& space, const BMParams& prm, SetKind which,
                                unsigned threads = 1) {
  if (!same_field(space.field(), prm.f())) throw UsageError("params and space use different fields");
  switch (which) {
    case SetKind::B:
      return detail::collect(space, which, threads, [&](const Coords& c) { return member_B(prm, c); });
    case SetKind::F:
      return detail::collect(space, which, threads, [&](const Coords& c) { return member_F(prm, c); });
    case SetKind::M:
      return detail::collect(space, which, threads, [&](const Coords& c) { return member_M(prm, c); });
    case SetKind::H:
      return build_hermitian(space, threads);
    case SetKind::other:
      break;
  }
  throw UsageError("cannot build a point set of kind 'other'");
}

// Omega_0 = {P_inf}, Omega_1 = (l1 u l2) \ {P_inf}, Omega_2 = affine points
// of M, Omega_3 = M \ B. For q = 3 mod 4 the lines l1, l2 are not in M:
// Omega_1 is empty and Omega_3 holds F \ {P_inf}.
struct OmegaPartition {
  std::array<PointSet, 4> omega;
  bool four_way = true;

  // 0..3, or -1 if the point is not in M.
  int label_of(PointIndex i) const {
    for (int k = 0; k < 4; ++k)
      if (omega[k].contains(i)) return k;
    return -1;
  }
};

inline OmegaPartition omega_partition(const ProjectiveSpace& space, const BMParams& prm, unsigned threads = 1) {
  const PointSet m = build_point_set(space, prm, SetKind::M, threads);
  const PointSet b = build_point_set(space, prm, SetKind::B, threads);
  const PointIndex total = space.point_count();
  OmegaPartition out;
  for (auto& s : out.omega) s = PointSet(total, SetKind::other);
  out.four_way = prm.q_is_1_mod_4();
  const PointIndex pinf = space.index_of(BMParams::p_inf());
  m.for_each([&](PointIndex i) {
    if (i == pinf) {
      out.omega[0].insert(i);
    } else if (i >= space.affine_offset()) {
      out.omega[2].insert(i);
    } else if (out.four_way && b.contains(i)) {
      out.omega[1].insert(i);
    } else {
      out.omega[3].insert(i);
    }
  });
  return out;
}

struct SpectrumReport {
  std::map<std::uint64_t, std::uint64_t> histogram;  // |S n H| -> number of H
  bool two_character = false;
  std::uint64_t secant = 0;   // q^3 + 1
  std::uint64_t tangent = 0;  // q^3 + q^2 + 1

  bool operator==(const SpectrumReport&) const = default;
};

// Exact histogram of |S n H| over all hyperplanes. Each point of S bumps the
// counters of the hyperplanes through it.
inline SpectrumReport hyperplane_spectrum(const ProjectiveSpace& space, const PointSet& s, unsigned threads = 1) {
  const PointIndex total = space.hyperplane_count();
  const auto pts = s.indices();
  threads = std::max(1u, threads);
  std::vector<std::vector<std::uint32_t>> partial(threads);
  parallel_chunks(pts.size(), threads, [&](unsigned w, std::size_t b, std::size_t e) {
    auto& cnt = partial[w];
    cnt.assign(total, 0);
    for (std::size_t k = b; k < e; ++k)
      space.for_each_point_on_hyperplane(space.coords_at(pts[k]), [&](PointIndex h) { ++cnt[h]; });
  });
  std::vector<std::uint32_t> count(total, 0);
  for (const auto& cnt : partial) {
    if (cnt.empty()) continue;
    for (PointIndex h = 0; h < total; ++h) count[h] += cnt[h];
  }
  SpectrumReport r;
  for (auto c : count) ++r.histogram[c];
  const std::uint64_t q = space.field().q();
  r.secant = q * q * q + 1;
  r.tangent = q * q * q + q * q + 1;
  r.two_character = r.histogram.size() == 2 && r.histogram.contains(r.secant) && r.histogram.contains(r.tangent);
  return r;
}

}  // namespace qhv
