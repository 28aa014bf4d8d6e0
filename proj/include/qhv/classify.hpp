#pragma once

// Equivalence of BM quasi-Hermitian varieties under semilinear collineations.
//
// Every equivalence M_{a,b} -> M_{a',b'} can be taken of the form
//   (J,X,Y,Z) -> (J^s, X^s, Y^s, Z^s) * diag(a, [[b, c], [c, -b]] or
//                                            [[b, c], [-c, b]], 1)
// with s a field automorphism, a in GF(q)*, b^2 + c^2 != 0, and c = lambda b
// (lambda in GF(q)*, lambda^2 + 1 != 0) when b and c are both nonzero. It
// exists iff
//   a' = a alpha^s / (b^2 + c^2),   b' - a beta^s / (b^(q+1) + c^(q+1)) in GF(q).
// Classes are labelled by the Frobenius orbit of
//   delta = (eps^q - eps)^2 / (4 alpha^(q+1))   (after normalizing beta = eps).

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "qhv/error.hpp"
#include "qhv/field.hpp"
#include "qhv/pointset.hpp"
#include "qhv/projgeom.hpp"
#include "qhv/variety.hpp"

namespace qhv {

using Matrix4 = std::array<Coords, 4>;

struct Collineation {
  int sigma_exp = 0;  // x -> x^(p^sigma_exp)
  Matrix4 matrix{};   // acts on row vectors: v -> v^sigma * matrix
  // Normal-form parameters, when the map came from the search.
  int shape = 0;  // 1: [[b,c],[c,-b]]; 2: [[b,c],[-c,b]]; 0: unknown
  Fe a{}, b{}, c{};

  bool operator==(const Collineation&) const = default;

  static Collineation normal_form(const GaloisField& f, int sigma_exp, int shape, Fe a, Fe b, Fe c) {
    Collineation k;
    k.sigma_exp = sigma_exp;
    k.shape = shape;
    k.a = a;
    k.b = b;
    k.c = c;
    k.matrix[0] = {a, Fe{}, Fe{}, Fe{}};
    k.matrix[1] = {Fe{}, b, c, Fe{}};
    k.matrix[2] = shape == 1 ? Coords{Fe{}, c, f.neg(b), Fe{}} : Coords{Fe{}, f.neg(c), b, Fe{}};
    k.matrix[3] = {Fe{}, Fe{}, Fe{}, GaloisField::one()};
    return k;
  }

  static Collineation identity() {
    Collineation k;
    for (int i = 0; i < 4; ++i) k.matrix[i][i] = GaloisField::one();
    k.shape = 2;
    k.a = k.b = GaloisField::one();
    return k;
  }

  Coords apply(const GaloisField& f, const Coords& v) const {
    Coords vs{};
    for (int i = 0; i < 4; ++i) vs[i] = f.frobenius(v[i], sigma_exp);
    Coords out{};
    for (int j = 0; j < 4; ++j) {
      Fe acc{};
      for (int i = 0; i < 4; ++i) acc = f.add(acc, f.mul(vs[i], matrix[i][j]));
      out[j] = acc;
    }
    return out;
  }
};

inline Fe determinant(const GaloisField& f, Matrix4 m) {
  Fe det = GaloisField::one();
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = col; r < 4; ++r)
      if (!m[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return Fe{};
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = f.neg(det);
    }
    det = f.mul(det, m[col][col]);
    const Fe inv = f.inv(m[col][col]);
    for (int r = col + 1; r < 4; ++r) {
      const Fe t = f.mul(m[r][col], inv);
      for (int k = col; k < 4; ++k) m[r][k] = f.sub(m[r][k], f.mul(t, m[col][k]));
    }
  }
  return det;
}

inline PointSet apply_collineation(const ProjectiveSpace& space, const Collineation& k, const PointSet& s) {
  const auto& f = space.field();
  if (determinant(f, k.matrix).is_zero()) throw InvariantViolation("collineation matrix is singular");
  PointSet out(space.point_count(), s.kind());
  s.for_each([&](PointIndex i) { out.insert(space.index_of_vector(k.apply(f, space.coords_at(i)))); });
  if (out.size() != s.size()) throw InvariantViolation("collineation is not injective on the point set");
  return out;
}

// (alpha/b^2, eps) where beta = beta0 + eps beta1 and b is the least solution
// of b^(q+1) = beta1.
inline BMParams normalize_to_epsilon(const BMParams& prm) {
  const auto& f = prm.f();
  const auto [beta0, beta1] = subfield_decompose(f, prm.beta, prm.epsilon);
  (void)beta0;
  const auto roots = solve_norm(f, beta1);
  if (roots.empty() || roots.front().is_zero()) throw InvariantViolation("beta has no GF(q)-free part");
  const Fe b = roots.front();
  return validate_params(prm.field, f.div(prm.alpha, f.mul(b, b)), prm.epsilon, prm.epsilon);
}

// Least element of {x^(p^k)}.
inline Fe frobenius_canonical(const GaloisField& f, Fe x) {
  Fe best = x;
  for (int k = 1; k < f.degree(); ++k) best = std::min(best, f.frobenius(x, k));
  return best;
}

struct ClassKey {
  Fe delta;
  Fe canonical;
};

// (eps^q - eps)^2 / (4 alpha^(q+1)) for a pair already normalized to beta = eps.
inline Fe delta_of_normalized(const BMParams& prm) {
  const auto& f = prm.f();
  const Fe d = f.sub(f.conj(prm.epsilon), prm.epsilon);
  return f.div(f.mul(d, d), f.mul(f.from_int(4), f.norm(prm.alpha)));
}

// (beta^q - beta)^2 / (4 alpha^(q+1)) on the raw pair.
inline Fe delta_direct(const BMParams& prm) {
  const auto& f = prm.f();
  const Fe d = f.sub(f.conj(prm.beta), prm.beta);
  return f.div(f.mul(d, d), f.mul(f.from_int(4), f.norm(prm.alpha)));
}

inline ClassKey class_key(const BMParams& prm) {
  if (!prm.checked) validate_params(prm.field, prm.alpha, prm.beta, prm.epsilon);
  const Fe delta = delta_of_normalized(normalize_to_epsilon(prm));
  const auto& f = prm.f();
  if (!f.in_subfield(delta) || delta.is_zero() || delta == f.neg(GaloisField::one()))
    throw InvariantViolation("delta outside GF(q) \\ {0, -1}");
  return {delta, frobenius_canonical(f, delta)};
}

inline bool are_equivalent(const BMParams& p1, const BMParams& p2) {
  if (!same_field(p1.f(), p2.f())) throw UsageError("parameter pairs over different fields");
  return class_key(p1).canonical == class_key(p2).canonical;
}

// (b,0), (0,c) and (b, lambda b) with lambda in GF(q)*, lambda^2 + 1 != 0,
// sorted by the code b + c q^2 (c major).
inline std::vector<std::pair<Fe, Fe>> admissible_bc(const GaloisField& f) {
  std::vector<std::pair<Fe, Fe>> out;
  std::vector<Fe> lambdas;
  for (Fe l : f.subfield_elements())
    if (!l.is_zero() && !f.add(f.mul(l, l), GaloisField::one()).is_zero()) lambdas.push_back(l);
  for (std::uint32_t v = 1; v < f.order(); ++v) {
    const Fe x{v};
    out.emplace_back(x, Fe{});
    out.emplace_back(Fe{}, x);
    for (Fe l : lambdas) out.emplace_back(x, f.mul(l, x));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::pair(x.second, x.first) < std::pair(y.second, y.first);
  });
  return out;
}

struct EquivalenceWitness {
  Collineation map;
  Fe u;  // beta' = a beta^sigma / (b^(q+1) + c^(q+1)) + u
};

// Exhaustive search: sigma, then (b,c) in canonical order, then a; u is
// forced by the beta condition. The condition does not depend on the matrix
// shape, so the hit is reported in shape 2 (identity for b = 1, c = 0).
inline std::optional<EquivalenceWitness> find_collineation(const BMParams& from, const BMParams& to) {
  if (!same_field(from.f(), to.f())) throw UsageError("parameter pairs over different fields");
  const auto& f = from.f();
  const auto pairs = admissible_bc(f);
  std::vector<Fe> units;
  for (Fe a : f.subfield_elements())
    if (!a.is_zero()) units.push_back(a);
  for (int sigma = 0; sigma < f.degree(); ++sigma) {
    const Fe as = f.frobenius(from.alpha, sigma), bs = f.frobenius(from.beta, sigma);
    for (const auto& [b, c] : pairs) {
      const Fe sq = f.add(f.mul(b, b), f.mul(c, c));
      const Fe nm = f.add(f.norm(b), f.norm(c));
      if (sq.is_zero() || nm.is_zero()) continue;
      const Fe lhs = f.mul(to.alpha, sq);
      for (Fe a : units) {
        if (lhs != f.mul(a, as)) continue;
        const Fe u = f.sub(to.beta, f.div(f.mul(a, bs), nm));
        if (f.in_subfield(u)) return EquivalenceWitness{Collineation::normal_form(f, sigma, 2, a, b, c), u};
      }
    }
  }
  return std::nullopt;
}

struct StabilizerReport {
  std::uint64_t origin_stabilizer = 0;  // distinct normal-form maps fixing (alpha, beta)
  std::uint64_t order = 0;              // origin_stabilizer * q^5
};

// Normal-form maps (both shapes) sending M_{alpha,beta} to itself, one per
// distinct (sigma, matrix). The corner entry is 1, so matrices are already
// scale-normalized.
inline std::vector<Collineation> stabilizer_elements(const BMParams& prm) {
  const auto& f = prm.f();
  std::vector<Collineation> out;
  std::set<std::pair<int, std::array<std::uint32_t, 16>>> seen;
  const auto pairs = admissible_bc(f);
  for (int sigma = 0; sigma < f.degree(); ++sigma) {
    const Fe as = f.frobenius(prm.alpha, sigma), bs = f.frobenius(prm.beta, sigma);
    for (const auto& [b, c] : pairs) {
      const Fe sq = f.add(f.mul(b, b), f.mul(c, c));
      const Fe nm = f.add(f.norm(b), f.norm(c));
      if (sq.is_zero() || nm.is_zero()) continue;
      for (Fe a : f.subfield_elements()) {
        if (a.is_zero() || f.mul(prm.alpha, sq) != f.mul(a, as)) continue;
        if (!f.in_subfield(f.sub(prm.beta, f.div(f.mul(a, bs), nm)))) continue;
        for (int shape : {1, 2}) {
          const auto k = Collineation::normal_form(f, sigma, shape, a, b, c);
          std::array<std::uint32_t, 16> key{};
          for (int i = 0; i < 16; ++i) key[i] = k.matrix[i / 4][i % 4].v;
          if (seen.emplace(sigma, key).second) out.push_back(k);
        }
      }
    }
  }
  return out;
}

// Experimental: assumes the collineation group is transitive on the q^5
// affine points and that the stabilizer of the origin consists of
// normal-form maps.
inline StabilizerReport stabilizer_order(const BMParams& prm) {
  if (!prm.q_is_1_mod_4()) throw DomainError("stabilizer order needs q = 1 mod 4");
  StabilizerReport r;
  r.origin_stabilizer = stabilizer_elements(prm).size();
  const std::uint64_t q = prm.f().q();
  r.order = r.origin_stabilizer * q * q * q * q * q;
  return r;
}

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("class count overflows 64 bits");
  return r;
}

inline std::uint64_t checked_pow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r = checked_mul(r, b);
  return r;
}

inline std::uint64_t euler_phi(std::uint64_t m) {
  std::uint64_t r = m;
  for (auto pr : prime_factors(m)) r = r / pr * (pr - 1);
  return r;
}

inline int mobius(std::uint64_t m) {
  int sign = 1;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d) continue;
    m /= d;
    if (m % d == 0) return 0;
    sign = -sign;
  }
  if (m > 1) sign = -sign;
  return sign;
}

inline std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> d;
  for (unsigned k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  return d;
}

}  // namespace detail

// N = (1/n) sum_{k | n} phi(n/k) p^k - 2
inline std::uint64_t count_classes_formula(int p, int n) {
  if (p < 3 || !detail::is_prime(static_cast<std::uint64_t>(p))) throw DomainError("p must be an odd prime");
  if (n < 1) throw DomainError("n must be positive");
  std::uint64_t sum = 0;
  for (unsigned k : detail::divisors(static_cast<unsigned>(n)))
    sum += detail::checked_mul(detail::euler_phi(static_cast<unsigned>(n) / k), detail::checked_pow(p, k));
  if (sum % static_cast<std::uint64_t>(n) != 0) throw InvariantViolation("necklace sum not divisible by n");
  return sum / static_cast<std::uint64_t>(n) - 2;
}

// N_e: elements of GF(p^e) \ {0,-1} in no proper subfield, by Moebius
// inversion of sum_{e'|e} N_e' = p^e - 2. N = sum_{e | n} N_e / e.
inline std::map<unsigned, std::int64_t> classes_by_degree(int p, int n) {
  std::map<unsigned, std::int64_t> out;
  for (unsigned e : detail::divisors(static_cast<unsigned>(n))) {
    std::int64_t ne = 0;
    for (unsigned d : detail::divisors(e)) {
      const int mu = detail::mobius(d);
      ne += mu * static_cast<std::int64_t>(detail::checked_pow(p, e / d)) - 2 * mu;
    }
    out[e] = ne;
  }
  return out;
}

// Frobenius orbits on GF(q) \ {0, -1}, as canonical representatives with
// orbit sizes.
inline std::map<Fe, std::size_t> delta_orbits(const GaloisField& f) {
  std::map<Fe, std::size_t> out;
  const Fe minus_one = f.neg(GaloisField::one());
  for (Fe x : f.subfield_elements()) {
    if (x.is_zero() || x == minus_one) continue;
    ++out[frobenius_canonical(f, x)];
  }
  return out;
}

inline std::uint64_t count_classes_bruteforce(const GaloisField& f) { return delta_orbits(f).size(); }

struct ClassInfo {
  Fe delta_canonical;
  Fe alpha;  // representative (alpha, eps)
  Fe beta;
  std::uint64_t size = 0;  // valid (alpha, beta) pairs in the class
};

// One class per delta orbit. The representative alpha is the least solution
// of 4 delta alpha^(q+1) = (eps^q - eps)^2. Each delta is hit by q+1 values
// of alpha for each of the q^2 - q admissible betas.
inline std::vector<ClassInfo> classes_from_orbits(const GaloisField& f, std::optional<Fe> epsilon = {}) {
  const Fe eps = epsilon.value_or(f.primitive_element());
  const Fe d = f.sub(f.conj(eps), eps);
  const std::uint64_t q = f.q();
  std::vector<ClassInfo> out;
  for (const auto& [delta, orbit] : delta_orbits(f)) {
    const Fe target = f.div(f.mul(d, d), f.mul(f.from_int(4), delta));
    const auto roots = solve_norm(f, target);
    out.push_back({delta, roots.front(), eps, orbit * (q * q - q) * (q + 1)});
  }
  return out;
}

struct ClassGrouping {
  std::uint64_t raw_pairs = 0;  // alpha != 0, beta not in GF(q)
  std::uint64_t rejected = 0;   // failed the validity condition
  std::vector<ClassInfo> classes;
};

// Enumerates every raw pair and groups the valid ones by class key.
inline ClassGrouping group_by_class_key(const FieldPtr& field, std::optional<Fe> epsilon = {}) {
  const auto& f = *field;
  ClassGrouping g;
  std::map<Fe, ClassInfo> by_key;
  for (std::uint32_t bv = 0; bv < f.order(); ++bv) {
    const Fe beta{bv};
    if (f.in_subfield(beta)) continue;
    for (std::uint32_t av = 1; av < f.order(); ++av) {
      ++g.raw_pairs;
      if (validity_form(f, Fe{av}, beta).is_zero()) {
        ++g.rejected;
        continue;
      }
      const auto key = class_key(validate_params(field, Fe{av}, beta, epsilon));
      auto [it, fresh] = by_key.try_emplace(key.canonical, ClassInfo{key.canonical, Fe{av}, beta, 0});
      ++it->second.size;
    }
  }
  for (auto& [k, info] : by_key) g.classes.push_back(info);
  return g;
}

}  // namespace qhv
