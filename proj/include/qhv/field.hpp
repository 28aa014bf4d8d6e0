#pragma once

// Exact arithmetic in GF(q^2), q = p^n odd, with GF(q) embedded as the fixed
// field of x -> x^q.
//
// Elements are encoded as integers sum c_i p^i over the power basis of a root
// of the modulus. That encoding is also the canonical total order used
// whenever a "least" element is chosen.

#include <algorithm>
#include <array>
#include <charconv>
#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qhv/error.hpp"

namespace qhv {

struct Fe {
  std::uint32_t v = 0;

  constexpr auto operator<=>(const Fe&) const = default;
  constexpr bool is_zero() const { return v == 0; }
};

namespace detail {

inline bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) {
      out.push_back(d);
      while (x % d == 0) x /= d;
    }
  }
  if (x > 1) out.push_back(x);
  return out;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

// Dense polynomials over GF(p), constant term first, no trailing zeros.
using Poly = std::vector<int>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int inv_mod(int a, int p) {
  int r = 1, e = p - 2;
  long long b = a % p;
  while (e) {
    if (e & 1) r = static_cast<int>(r * b % p);
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = inv_mod(m.back(), p);
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int f = a.back() * lead_inv % p;
    for (int i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - f * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, int p) {
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  for (int d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1);
      std::uint64_t c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

struct FieldSpec {
  int p = 0;
  int n = 0;
  // Monic irreducible of degree 2n over GF(p), constant term first.
  std::vector<int> modulus;

  std::uint32_t q() const { return static_cast<std::uint32_t>(detail::ipow(p, n)); }
  std::uint32_t order() const { return static_cast<std::uint32_t>(detail::ipow(p, 2 * n)); }

  bool operator==(const FieldSpec&) const = default;
};

// Least monic irreducible polynomial of degree 2n over GF(p), ordering the
// coefficient lists by sum c_i p^i.
inline std::vector<int> default_modulus(int p, int n) {
  if (p < 3 || !detail::is_prime(p)) throw DomainError("p must be an odd prime");
  if (n < 1) throw DomainError("n must be positive");
  const int deg = 2 * n;
  const std::uint64_t count = detail::ipow(p, deg);
  for (std::uint64_t code = 0; code < count; ++code) {
    detail::Poly f(deg + 1);
    std::uint64_t c = code;
    for (int i = 0; i < deg; ++i) {
      f[i] = static_cast<int>(c % p);
      c /= p;
    }
    f[deg] = 1;
    if (detail::is_irreducible(f, p)) return f;
  }
  throw DomainError("no irreducible polynomial found");
}

// GF(p^(2n)) with log/antilog tables. Immutable after construction and safe
// to share across threads.
class GaloisField {
 public:
  static constexpr std::uint32_t max_order = 1u << 20;

  explicit GaloisField(FieldSpec spec) : spec_(std::move(spec)) {
    const int p = spec_.p, n = spec_.n;
    if (p < 3 || !detail::is_prime(p)) throw DomainError("p must be an odd prime");
    if (n < 1) throw DomainError("n must be positive");
    if (detail::ipow(p, 2 * n) > max_order) throw DomainError("field too large for table arithmetic");
    const int deg = 2 * n;
    if (static_cast<int>(spec_.modulus.size()) != deg + 1 || spec_.modulus.back() != 1)
      throw DomainError("modulus must be monic of degree 2n");
    for (int c : spec_.modulus)
      if (c < 0 || c >= p) throw DomainError("modulus coefficient out of range");
    if (!detail::is_irreducible(spec_.modulus, p)) throw DomainError("modulus is not irreducible");

    q_ = spec_.q();
    order_ = spec_.order();
    deg_ = deg;
    build_digit_tables();
    build_log_tables();
    build_maps();
  }

  static std::shared_ptr<const GaloisField> make(int p, int n, std::optional<std::vector<int>> modulus = {}) {
    FieldSpec spec{p, n, modulus ? *modulus : default_modulus(p, n)};
    return std::make_shared<const GaloisField>(std::move(spec));
  }

  const FieldSpec& spec() const { return spec_; }
  int p() const { return spec_.p; }
  int n() const { return spec_.n; }
  std::uint32_t q() const { return q_; }
  std::uint32_t order() const { return order_; }
  int degree() const { return deg_; }

  static constexpr Fe zero() { return Fe{0}; }
  static constexpr Fe one() { return Fe{1}; }

  bool contains(Fe x) const { return x.v < order_; }

  Fe add(Fe a, Fe b) const {
    if (!add_table_.empty()) return Fe{add_table_[a.v * order_ + b.v]};
    return add_digits(a.v, b.v, false);
  }
  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
  Fe neg(Fe a) const { return Fe{neg_[a.v]}; }

  Fe mul(Fe a, Fe b) const {
    if (a.v == 0 || b.v == 0) return Fe{0};
    return Fe{exp_[log_[a.v] + log_[b.v]]};
  }

  Fe inv(Fe a) const {
    if (a.v == 0) throw DivisionByZero();
    const std::uint32_t l = log_[a.v];
    return Fe{exp_[l == 0 ? 0 : (order_ - 1) - l]};
  }

  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

  Fe pow(Fe a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.v == 0) return zero();
    const std::uint64_t m = order_ - 1;
    return Fe{exp_[static_cast<std::uint32_t>((log_[a.v] * (e % m)) % m)]};
  }

  // Embedding of the integer k (mod p) into the prime field.
  Fe from_int(long long k) const {
    const long long p = spec_.p;
    return Fe{static_cast<std::uint32_t>(((k % p) + p) % p)};
  }

  // x -> x^q, the involution fixing GF(q).
  Fe conj(Fe x) const { return Fe{conj_[x.v]}; }
  Fe norm(Fe x) const { return mul(x, conj(x)); }
  Fe trace(Fe x) const { return add(x, conj(x)); }
  bool in_subfield(Fe x) const { return conj_[x.v] == x.v; }

  // GF(q) as a sorted list of elements of GF(q^2).
  const std::vector<Fe>& subfield_elements() const { return subfield_; }

  // x -> x^(p^k), k taken modulo 2n.
  Fe frobenius(Fe x, int k) const {
    k %= deg_;
    if (k < 0) k += deg_;
    for (int i = 0; i < k; ++i) x = Fe{frob_[x.v]};
    return x;
  }

  // Discrete log base the least primitive element; x must be nonzero.
  std::uint32_t log(Fe x) const {
    if (x.v == 0) throw DomainError("log of zero");
    return log_[x.v];
  }
  Fe exp(std::uint64_t k) const { return Fe{exp_[static_cast<std::uint32_t>(k % (order_ - 1))]}; }

  // Least element (canonical order) of multiplicative order q^2 - 1.
  Fe primitive_element() const { return primitive_; }

  bool is_primitive(Fe x) const {
    if (x.v == 0) return false;
    return std::gcd(static_cast<std::uint64_t>(log_[x.v]), static_cast<std::uint64_t>(order_ - 1)) == 1;
  }

  struct SqrtMinusOne {
    Fe value;
    bool in_subfield;
  };

  // Least nu with nu^2 = -1.
  SqrtMinusOne sqrt_minus_one() const {
    const Fe target = neg(one());
    for (std::uint32_t v = 0; v < order_; ++v) {
      if (mul(Fe{v}, Fe{v}) == target) return {Fe{v}, in_subfield(Fe{v})};
    }
    throw InvariantViolation("no square root of -1 in GF(q^2)");
  }

  std::vector<int> coeffs(Fe x) const {
    std::vector<int> c(deg_);
    std::uint32_t v = x.v;
    for (int i = 0; i < deg_; ++i) {
      c[i] = static_cast<int>(v % spec_.p);
      v /= spec_.p;
    }
    return c;
  }

  Fe from_coeffs(std::span<const int> c) const {
    if (static_cast<int>(c.size()) > deg_) throw DomainError("too many coefficients");
    std::uint32_t v = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
      if (c[i] < 0 || c[i] >= spec_.p) throw DomainError("coefficient out of range");
      v = v * spec_.p + static_cast<std::uint32_t>(c[i]);
    }
    return Fe{v};
  }

  // Canonical text form "c0,c1,...".
  std::string format(Fe x) const {
    std::string s;
    for (int c : coeffs(x)) {
      if (!s.empty()) s += ',';
      s += std::to_string(c);
    }
    return s;
  }

  // Accepts "c0,c1,..." (short lists are zero padded), "eps" and "eps^k",
  // where eps is the given primitive element (default: the least one).
  Fe parse(std::string_view text, std::optional<Fe> eps = {}) const {
    const Fe e = eps.value_or(primitive_);
    if (text.starts_with("eps")) {
      auto rest = text.substr(3);
      if (rest.empty()) return e;
      if (!rest.starts_with("^")) throw DomainError("bad element syntax: " + std::string(text));
      rest.remove_prefix(1);
      long long k = 0;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
      if (ec != std::errc{} || ptr != rest.data() + rest.size())
        throw DomainError("bad exponent: " + std::string(text));
      const long long m = order_ - 1;
      return pow(e, static_cast<std::uint64_t>(((k % m) + m) % m));
    }
    std::vector<int> c;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t comma = text.find(',', pos);
      const auto tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      int value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
        throw DomainError("bad element syntax: " + std::string(text));
      c.push_back(value);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return from_coeffs(c);
  }

 private:
  Fe add_digits(std::uint32_t a, std::uint32_t b, bool subtract) const {
    std::uint32_t r = 0, scale = 1;
    const std::uint32_t p = static_cast<std::uint32_t>(spec_.p);
    for (int i = 0; i < deg_; ++i) {
      const std::uint32_t da = a % p, db = b % p;
      a /= p;
      b /= p;
      r += ((subtract ? da + p - db : da + db) % p) * scale;
      scale *= p;
    }
    return Fe{r};
  }

  // Schoolbook product reduced by the modulus; only used to seed the tables.
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    const int p = spec_.p;
    detail::Poly pa(deg_), pb(deg_);
    for (int i = 0; i < deg_; ++i) {
      pa[i] = static_cast<int>(a % p);
      a /= p;
      pb[i] = static_cast<int>(b % p);
      b /= p;
    }
    detail::Poly prod(2 * deg_, 0);
    for (int i = 0; i < deg_; ++i)
      for (int j = 0; j < deg_; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
    const auto r = detail::poly_mod(prod, spec_.modulus, p);
    std::uint32_t v = 0;
    for (int i = static_cast<int>(r.size()) - 1; i >= 0; --i) v = v * p + static_cast<std::uint32_t>(r[i]);
    return v;
  }

  std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  }

  void build_digit_tables() {
    neg_.resize(order_);
    for (std::uint32_t v = 0; v < order_; ++v) neg_[v] = add_digits(0, v, true).v;
    if (order_ <= 2048) {
      add_table_.resize(static_cast<std::size_t>(order_) * order_);
      for (std::uint32_t a = 0; a < order_; ++a)
        for (std::uint32_t b = 0; b < order_; ++b) add_table_[a * order_ + b] = add_digits(a, b, false).v;
    }
  }

  void build_log_tables() {
    const std::uint64_t m = order_ - 1;
    const auto factors = detail::prime_factors(m);
    std::uint32_t g = 0;
    for (std::uint32_t v = 1; v < order_ && g == 0; ++v) {
      bool generator = true;
      for (auto r : factors) {
        if (slow_pow(v, m / r) == 1) {
          generator = false;
          break;
        }
      }
      if (generator) g = v;
    }
    if (g == 0) throw DomainError("modulus does not define a field");
    primitive_ = Fe{g};
    exp_.resize(2 * m);
    log_.assign(order_, 0);
    std::uint32_t x = 1;
    for (std::uint64_t k = 0; k < m; ++k) {
      exp_[k] = x;
      log_[x] = static_cast<std::uint32_t>(k);
      x = slow_mul(x, g);
    }
    for (std::uint64_t k = m; k < 2 * m; ++k) exp_[k] = exp_[k - m];
  }

  void build_maps() {
    conj_.resize(order_);
    frob_.resize(order_);
    for (std::uint32_t v = 0; v < order_; ++v) {
      conj_[v] = pow(Fe{v}, q_).v;
      frob_[v] = pow(Fe{v}, static_cast<std::uint64_t>(spec_.p)).v;
      if (conj_[v] == v) subfield_.push_back(Fe{v});
    }
  }

  FieldSpec spec_;
  std::uint32_t q_ = 0;
  std::uint32_t order_ = 0;
  int deg_ = 0;
  Fe primitive_{};
  std::vector<std::uint32_t> add_table_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> conj_;
  std::vector<std::uint32_t> frob_;
  std::vector<Fe> subfield_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

inline bool same_field(const GaloisField& a, const GaloisField& b) { return &a == &b || a.spec() == b.spec(); }

// All roots of X^q + aX + b = 0 in GF(q^2), ascending.
//
// X -> X^q + aX is GF(q)-linear, so the roots are a coset of its kernel; the
// map is solved as a 2x2 system over GF(q) in the basis {1, eps}.
inline std::vector<Fe> solve_q_linear(const GaloisField& f, Fe a, Fe b) {
  const Fe eps = f.primitive_element();
  const Fe d = f.sub(eps, f.conj(eps));  // eps - eps^q, nonzero
  auto split = [&](Fe x) {
    const Fe x1 = f.div(f.sub(x, f.conj(x)), d);
    return std::pair{f.sub(x, f.mul(eps, x1)), x1};
  };
  auto lin = [&](Fe x) { return f.add(f.conj(x), f.mul(a, x)); };
  const auto [m00, m10] = split(lin(GaloisField::one()));
  const auto [m01, m11] = split(lin(eps));
  const auto [r0, r1] = split(f.neg(b));

  // Gaussian elimination on [m00 m01 | r0; m10 m11 | r1].
  std::array<std::array<Fe, 3>, 2> rows{{{m00, m01, r0}, {m10, m11, r1}}};
  int rank = 0;
  std::array<int, 2> pivot_col{-1, -1};
  for (int col = 0; col < 2 && rank < 2; ++col) {
    int piv = -1;
    for (int r = rank; r < 2; ++r)
      if (!rows[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    const Fe s = f.inv(rows[rank][col]);
    for (auto& e : rows[rank]) e = f.mul(e, s);
    for (int r = 0; r < 2; ++r) {
      if (r == rank || rows[r][col].is_zero()) continue;
      const Fe t = rows[r][col];
      for (int k = 0; k < 3; ++k) rows[r][k] = f.sub(rows[r][k], f.mul(t, rows[rank][k]));
    }
    pivot_col[rank] = col;
    ++rank;
  }
  for (int r = rank; r < 2; ++r)
    if (!rows[r][2].is_zero()) return {};

  auto compose = [&](Fe x0, Fe x1) { return f.add(x0, f.mul(eps, x1)); };
  std::vector<Fe> roots;
  if (rank == 2) {
    roots.push_back(compose(rows[0][2], rows[1][2]));
  } else if (rank == 1) {
    const int pc = pivot_col[0];
    const int fc = 1 - pc;
    for (Fe t : f.subfield_elements()) {
      std::array<Fe, 2> x{};
      x[fc] = t;
      x[pc] = f.sub(rows[0][2], f.mul(rows[0][fc], t));
      roots.push_back(compose(x[0], x[1]));
    }
  } else {
    for (Fe x0 : f.subfield_elements())
      for (Fe x1 : f.subfield_elements()) roots.push_back(compose(x0, x1));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Reference method: scan every element of GF(q^2).
inline std::vector<Fe> solve_q_linear_exhaustive(const GaloisField& f, Fe a, Fe b) {
  std::vector<Fe> roots;
  for (std::uint32_t v = 0; v < f.order(); ++v) {
    const Fe x{v};
    if (f.add(f.add(f.conj(x), f.mul(a, x)), b).is_zero()) roots.push_back(x);
  }
  return roots;
}

// All x with x^(q+1) = c, ascending; c must lie in GF(q).
inline std::vector<Fe> solve_norm(const GaloisField& f, Fe c) {
  if (!f.in_subfield(c)) throw DomainError("norm target must lie in GF(q)");
  if (c.is_zero()) return {GaloisField::zero()};
  const std::uint64_t q = f.q();
  const std::uint64_t lc = f.log(c);
  if (lc % (q + 1) != 0) throw InvariantViolation("log of a GF(q) element not divisible by q+1");
  std::vector<Fe> out;
  for (std::uint64_t j = 0; j <= q; ++j) out.push_back(f.exp(lc / (q + 1) + j * (q - 1)));
  std::sort(out.begin(), out.end());
  return out;
}

// x = x0 + eps * x1 with x0, x1 in GF(q).
inline std::pair<Fe, Fe> subfield_decompose(const GaloisField& f, Fe x, Fe eps) {
  if (f.in_subfield(eps)) throw DomainError("{1, eps} is not a GF(q)-basis: eps lies in GF(q)");
  const Fe x1 = f.div(f.sub(x, f.conj(x)), f.sub(eps, f.conj(eps)));
  return {f.sub(x, f.mul(eps, x1)), x1};
}

// Value-semantic element bound to its field; operations across fields throw.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Fe value) : field_(std::move(field)), value_(value) {
    if (!field_ || !field_->contains(value_)) throw UsageError("element out of range for field");
  }

  const GaloisField& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  Fe value() const { return value_; }

  friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    check(x, y);
    return {x.field_, x.field_->add(x.value_, y.value_)};
  }
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y) {
    check(x, y);
    return {x.field_, x.field_->sub(x.value_, y.value_)};
  }
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    check(x, y);
    return {x.field_, x.field_->mul(x.value_, y.value_)};
  }
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y) {
    check(x, y);
    return {x.field_, x.field_->div(x.value_, y.value_)};
  }
  FieldElement operator-() const { return {field_, field_->neg(value_)}; }

  FieldElement pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }
  FieldElement conjugate() const { return {field_, field_->conj(value_)}; }
  FieldElement norm() const { return {field_, field_->norm(value_)}; }
  FieldElement trace() const { return {field_, field_->trace(value_)}; }
  bool in_subfield() const { return field_->in_subfield(value_); }

  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return same_field(*x.field_, *y.field_) && x.value_ == y.value_;
  }

  std::string str() const { return field_->format(value_); }

 private:
  static void check(const FieldElement& x, const FieldElement& y) {
    if (!same_field(*x.field_, *y.field_)) throw UsageError("operands belong to different fields");
  }

  FieldPtr field_;
  Fe value_;
};

}  // namespace qhv
