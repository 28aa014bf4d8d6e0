#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qhv/error.hpp"
#include "qhv/projgeom.hpp"

namespace qhv {

enum class SetKind { B, F, M, H, other };

inline std::string_view to_string(SetKind k) {
  switch (k) {
    case SetKind::B: return "B";
    case SetKind::F: return "F";
    case SetKind::M: return "M";
    case SetKind::H: return "H";
    case SetKind::other: break;
  }
  return "other";
}

inline SetKind set_kind_from_string(std::string_view s) {
  if (s == "B") return SetKind::B;
  if (s == "F") return SetKind::F;
  if (s == "M") return SetKind::M;
  if (s == "H") return SetKind::H;
  if (s == "other") return SetKind::other;
  throw UsageError("unknown set kind: " + std::string(s));
}

// Bitset over the point indices of PG(3,q^2) with a cached cardinality.
class PointSet {
 public:
  PointSet() = default;
  PointSet(PointIndex universe, SetKind kind)
      : universe_(universe), kind_(kind), words_((static_cast<std::size_t>(universe) + 63) / 64, 0) {}

  static PointSet from_indices(PointIndex universe, SetKind kind, std::span<const PointIndex> idx) {
    PointSet s(universe, kind);
    for (auto i : idx) s.insert(i);
    return s;
  }

  static PointSet from_words(PointIndex universe, SetKind kind, std::vector<std::uint64_t> words) {
    PointSet s(universe, kind);
    if (words.size() != s.words_.size()) throw IoError("bitset block has the wrong length");
    const std::size_t tail = universe % 64;
    if (tail != 0 && (words.back() >> tail) != 0) throw IoError("bitset block has bits beyond the universe");
    s.words_ = std::move(words);
    s.card_ = 0;
    for (auto w : s.words_) s.card_ += static_cast<std::size_t>(std::popcount(w));
    return s;
  }

  PointIndex universe() const { return universe_; }
  SetKind kind() const { return kind_; }
  void set_kind(SetKind k) { kind_ = k; }
  std::size_t size() const { return card_; }
  bool empty() const { return card_ == 0; }

  bool contains(PointIndex i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void insert(PointIndex i) {
    if (i >= universe_) throw DomainError("point index out of range");
    auto& w = words_[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (!(w & bit)) {
      w |= bit;
      ++card_;
    }
  }

  void erase(PointIndex i) {
    auto& w = words_[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (w & bit) {
      w &= ~bit;
      --card_;
    }
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        fn(static_cast<PointIndex>(k * 64 + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
  }

  std::vector<PointIndex> indices() const {
    std::vector<PointIndex> out;
    out.reserve(card_);
    for_each([&](PointIndex i) { out.push_back(i); });
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  // Bitwise equality; the kind label is ignored.
  bool same_points(const PointSet& o) const { return universe_ == o.universe_ && words_ == o.words_; }

  PointSet set_union(const PointSet& o) const { return combine(o, [](auto a, auto b) { return a | b; }); }
  PointSet intersection(const PointSet& o) const { return combine(o, [](auto a, auto b) { return a & b; }); }
  PointSet difference(const PointSet& o) const { return combine(o, [](auto a, auto b) { return a & ~b; }); }

 private:
  template <class Op>
  PointSet combine(const PointSet& o, Op op) const {
    if (universe_ != o.universe_) throw UsageError("point sets over different spaces");
    std::vector<std::uint64_t> w(words_.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = op(words_[k], o.words_[k]);
    return from_words(universe_, SetKind::other, std::move(w));
  }

  PointIndex universe_ = 0;
  SetKind kind_ = SetKind::other;
  std::size_t card_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace qhv
