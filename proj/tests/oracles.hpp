#pragma once

// Reference implementations used only by the tests. They share no code with
// the library beyond the element encoding.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "qhv/qhv.hpp"

namespace oracle {

// Schoolbook polynomial arithmetic over GF(p) modulo a monic modulus.
class PolyField {
 public:
  PolyField(int p, std::vector<int> modulus) : p_(p), mod_(std::move(modulus)), deg_(static_cast<int>(mod_.size()) - 1) {
    order_ = 1;
    for (int i = 0; i < deg_; ++i) order_ *= static_cast<std::uint32_t>(p_);
    q_ = 1;
    for (int i = 0; i < deg_ / 2; ++i) q_ *= static_cast<std::uint32_t>(p_);
  }

  std::uint32_t order() const { return order_; }
  std::uint32_t q() const { return q_; }

  std::vector<int> digits(std::uint32_t v) const {
    std::vector<int> d(deg_);
    for (int i = 0; i < deg_; ++i) {
      d[i] = static_cast<int>(v % p_);
      v /= p_;
    }
    return d;
  }
  std::uint32_t encode(const std::vector<int>& d) const {
    std::uint32_t v = 0;
    for (int i = deg_ - 1; i >= 0; --i) v = v * p_ + static_cast<std::uint32_t>(((d[i] % p_) + p_) % p_);
    return v;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    auto x = digits(a), y = digits(b);
    for (int i = 0; i < deg_; ++i) x[i] += y[i];
    return encode(x);
  }
  std::uint32_t neg(std::uint32_t a) const {
    auto x = digits(a);
    for (auto& c : x) c = -c;
    return encode(x);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    const auto x = digits(a), y = digits(b);
    std::vector<long long> prod(2 * deg_, 0);
    for (int i = 0; i < deg_; ++i)
      for (int j = 0; j < deg_; ++j) prod[i + j] += static_cast<long long>(x[i]) * y[j];
    for (int k = 2 * deg_ - 1; k >= deg_; --k) {
      const long long c = prod[k] % p_;
      prod[k] = 0;
      for (int i = 0; i < deg_; ++i) prod[k - deg_ + i] -= c * mod_[i];
    }
    std::vector<int> out(deg_);
    for (int i = 0; i < deg_; ++i) out[i] = static_cast<int>(((prod[i] % p_) + p_) % p_);
    return encode(out);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  // Multiplicative order by repeated multiplication.
  std::uint64_t mult_order(std::uint32_t a) const {
    std::uint32_t x = a;
    for (std::uint64_t k = 1;; ++k) {
      if (x == 1) return k;
      x = mul(x, a);
    }
  }

 private:
  int p_;
  std::vector<int> mod_;
  int deg_;
  std::uint32_t order_ = 0, q_ = 0;
};

// Polynomial over GF(p) is irreducible iff no monic polynomial of degree
// 1..deg/2 divides it (long division).
inline bool irreducible_bruteforce(const std::vector<int>& f, int p) {
  const int deg = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<int> g(d + 1);
      std::uint64_t c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[d] = 1;
      std::vector<long long> r(f.begin(), f.end());
      for (int k = deg; k >= d; --k) {
        const long long lead = ((r[k] % p) + p) % p;
        for (int i = 0; i <= d; ++i) r[k - d + i] -= lead * g[i];
      }
      bool zero = true;
      for (int i = 0; i < d; ++i) zero = zero && ((r[i] % p) + p) % p == 0;
      if (zero) return false;
    }
  }
  return true;
}

// Normalized projective points of PG(3,s) in lexicographic order of their
// coordinate codes, produced by filtering all 4-tuples.
inline std::vector<std::array<std::uint32_t, 4>> lex_points(std::uint32_t s) {
  std::vector<std::array<std::uint32_t, 4>> out;
  for (std::uint32_t j = 0; j < 2; ++j)
    for (std::uint32_t x = 0; x < s; ++x)
      for (std::uint32_t y = 0; y < s; ++y)
        for (std::uint32_t z = 0; z < s; ++z) {
          const std::array<std::uint32_t, 4> v{j, x, y, z};
          int lead = -1;
          for (int i = 0; i < 4; ++i)
            if (v[i] != 0) {
              lead = i;
              break;
            }
          if (lead >= 0 && v[lead] == 1) out.push_back(v);
        }
  std::sort(out.begin(), out.end());
  return out;
}

// Defining equation of B at the affine point (1,x,y,z) with PolyField arithmetic.
inline bool affine_in_B(const PolyField& f, std::uint32_t alpha, std::uint32_t beta, std::uint32_t x, std::uint32_t y,
                        std::uint32_t z) {
  const std::uint64_t q = f.q();
  const auto conj = [&](std::uint32_t a) { return f.pow(a, q); };
  std::uint32_t lhs = f.sub(conj(z), z);
  lhs = f.add(lhs, f.mul(conj(alpha), f.add(f.pow(x, 2 * q), f.pow(y, 2 * q))));
  lhs = f.sub(lhs, f.mul(alpha, f.add(f.mul(x, x), f.mul(y, y))));
  const std::uint32_t nx = f.mul(x, conj(x)), ny = f.mul(y, conj(y));
  const std::uint32_t rhs = f.mul(f.sub(conj(beta), beta), f.add(nx, ny));
  return lhs == rhs;
}

// Plain BFS over explicit neighbor lists.
inline std::vector<int> bfs(const qhv::CollinearityGraph& g, qhv::Vertex src) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::vector<qhv::Vertex> queue{src};
  dist[src] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const auto u = queue[h];
    for (auto w : g.neighbors(u))
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

}  // namespace oracle
