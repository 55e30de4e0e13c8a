#pragma once

// Vectors of R^n under right scalar action, the nearfield scalar product,
// simple vectors and the canonical form of R-subgroups.
//
// Every R-subgroup of R^n is a direct sum u_1 R + ... + u_l R of nonzero
// vectors with disjoint supports. CanonicalSubgroup stores one representative
// of that decomposition: each u_i is scaled on the right so that its value at
// the smallest support index (the pivot) is 1, and blocks are sorted by
// pivot. Two canonical forms are equal iff they describe the same subgroup.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "error.hpp"
#include "nearfield.hpp"

namespace nearspace {

struct Vector {
  std::vector<Element> coords;

  Vector() = default;
  explicit Vector(std::size_t n) : coords(n, 0) {}
  Vector(std::initializer_list<Element> init) : coords(init) {}
  explicit Vector(std::vector<Element> c) : coords(std::move(c)) {}

  std::size_t size() const noexcept { return coords.size(); }
  Element operator[](std::size_t i) const noexcept { return coords[i]; }
  Element& operator[](std::size_t i) noexcept { return coords[i]; }

  bool is_zero() const noexcept {
    return std::all_of(coords.begin(), coords.end(), [](Element e) { return e == 0; });
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] != 0) s.push_back(i);
    return s;
  }

  std::size_t weight() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(coords.begin(), coords.end(), [](Element e) { return e != 0; }));
  }

  friend auto operator<=>(const Vector&, const Vector&) = default;
  friend bool operator==(const Vector&, const Vector&) = default;
};

struct VectorHash {
  std::size_t operator()(const Vector& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Element e : v.coords) {
      h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using Matrix = std::vector<Vector>;  // row-major: one Vector per row

/// Weight-one or weight-two vector, leading value normalized to 1.
struct SimpleVector {
  std::size_t dim = 0;
  std::vector<std::pair<std::size_t, Element>> entries;

  Vector to_vector() const {
    Vector v(dim);
    for (auto [j, x] : entries) v[j] = x;
    return v;
  }

  std::size_t weight() const noexcept { return entries.size(); }

  friend auto operator<=>(const SimpleVector&, const SimpleVector&) = default;
  friend bool operator==(const SimpleVector&, const SimpleVector&) = default;
};

struct Block {
  std::size_t pivot = 0;
  /// (coordinate, value) sorted by coordinate; the pivot entry has value 1.
  std::vector<std::pair<std::size_t, Element>> values;

  Element at(std::size_t j) const noexcept {
    for (auto [c, x] : values)
      if (c == j) return x;
    return 0;
  }

  friend auto operator<=>(const Block&, const Block&) = default;
  friend bool operator==(const Block&, const Block&) = default;
};

struct CanonicalSubgroup {
  std::size_t n = 0;
  std::vector<Block> blocks;

  std::size_t dim() const noexcept { return blocks.size(); }

  /// Coordinates covered by no block.
  std::vector<std::size_t> free_coordinates() const {
    std::vector<bool> used(n, false);
    for (const auto& b : blocks)
      for (auto [j, x] : b.values) used[j] = true;
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n; ++j)
      if (!used[j]) out.push_back(j);
    return out;
  }

  Vector basis_vector(std::size_t i) const {
    Vector u(n);
    for (auto [j, x] : blocks[i].values) u[j] = x;
    return u;
  }

  /// Empty string when the canonical-form invariants hold.
  std::string invariant_violation(Element order) const {
    std::vector<bool> used(n, false);
    std::size_t prev_pivot = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const auto& b = blocks[i];
      if (b.values.empty()) return "empty block";
      if (i > 0 && b.pivot <= prev_pivot) return "blocks not sorted by pivot";
      prev_pivot = b.pivot;
      if (b.values.front().first != b.pivot) return "pivot is not the smallest coordinate";
      if (b.values.front().second != 1) return "pivot value is not 1";
      for (std::size_t k = 0; k < b.values.size(); ++k) {
        auto [j, x] = b.values[k];
        if (j >= n) return "coordinate out of range";
        if (x == 0 || x >= order) return "block value out of range";
        if (k > 0 && j <= b.values[k - 1].first) return "block coordinates not increasing";
        if (used[j]) return "block supports overlap";
        used[j] = true;
      }
    }
    return {};
  }

  friend auto operator<=>(const CanonicalSubgroup&, const CanonicalSubgroup&) = default;
  friend bool operator==(const CanonicalSubgroup&, const CanonicalSubgroup&) = default;
};

namespace detail {
inline void require_dim(std::size_t a, std::size_t b) {
  if (a != b)
    throw Error(ErrorKind::DimensionMismatch,
                "dimension " + std::to_string(a) + " vs " + std::to_string(b));
}
}  // namespace detail

inline Vector vec_add(const Nearfield& nf, const Vector& x, const Vector& y) {
  detail::require_dim(x.size(), y.size());
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = nf.add(x[i], y[i]);
  return out;
}

/// (v_1, ..., v_n) r = (v_1 r, ..., v_n r)
inline Vector scalar_act(const Nearfield& nf, const Vector& v, Element r) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = nf.mul(v[i], r);
  return out;
}

/// sum_i x_i o y_i, left operand from x.
inline Element scalar_product(const Nearfield& nf, const Vector& x, const Vector& y) {
  detail::require_dim(x.size(), y.size());
  Element acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc = nf.add(acc, nf.mul(x[i], y[i]));
  return acc;
}

inline Element scalar_product(const Nearfield& nf, const SimpleVector& e, const Vector& y) {
  detail::require_dim(e.dim, y.size());
  Element acc = 0;
  for (auto [j, x] : e.entries) acc = nf.add(acc, nf.mul(x, y[j]));
  return acc;
}

/// Canonical form of u_1 R + ... + u_l R for nonzero vectors with pairwise
/// disjoint supports.
inline CanonicalSubgroup canonical_from_basis(const Nearfield& nf, std::size_t n,
                                              std::span<const Vector> basis) {
  CanonicalSubgroup t{n, {}};
  std::vector<bool> used(n, false);
  for (const auto& u : basis) {
    detail::require_dim(u.size(), n);
    const auto supp = u.support();
    if (supp.empty()) throw Error(ErrorKind::InternalInconsistency, "zero basis vector");
    const Element scale = nf.inv(u[supp.front()]);
    Block b{supp.front(), {}};
    for (auto j : supp) {
      if (used[j]) throw Error(ErrorKind::InternalInconsistency, "basis supports overlap");
      used[j] = true;
      b.values.emplace_back(j, nf.mul(u[j], scale));
    }
    t.blocks.push_back(std::move(b));
  }
  std::sort(t.blocks.begin(), t.blocks.end(),
            [](const Block& a, const Block& b) { return a.pivot < b.pivot; });
  return t;
}

/// Membership: zero off the blocks, and inside block i every coordinate is
/// u_ij o r with r read at the pivot.
inline bool contains(const Nearfield& nf, const CanonicalSubgroup& t, const Vector& v) {
  detail::require_dim(t.n, v.size());
  std::vector<bool> covered(t.n, false);
  for (const auto& b : t.blocks) {
    const Element r = v[b.pivot];
    for (auto [j, x] : b.values) {
      covered[j] = true;
      if (v[j] != nf.mul(x, r)) return false;
    }
  }
  for (std::size_t j = 0; j < t.n; ++j)
    if (!covered[j] && v[j] != 0) return false;
  return true;
}

/// (r_1, ..., r_l) with v = sum_i u_i r_i.
inline Vector phi(const Nearfield& nf, const CanonicalSubgroup& t, const Vector& v) {
  if (!contains(nf, t, v)) throw Error(ErrorKind::NotAMember, "vector is not in the subgroup");
  Vector w(t.dim());
  for (std::size_t i = 0; i < t.dim(); ++i) w[i] = v[t.blocks[i].pivot];
  return w;
}

inline Vector phi_inverse(const Nearfield& nf, const CanonicalSubgroup& t, const Vector& w) {
  detail::require_dim(t.dim(), w.size());
  Vector v(t.n);
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (auto [j, x] : t.blocks[i].values) v[j] = nf.mul(x, w[i]);
  return v;
}

inline constexpr std::uint64_t default_enumeration_cap = 1'000'000;

/// All |R|^l elements, in lexicographic order of their phi images.
inline std::vector<Vector> enumerate_elements(const Nearfield& nf, const CanonicalSubgroup& t,
                                              std::uint64_t cap = default_enumeration_cap) {
  const auto total = arith::checked_pow(nf.order(), t.dim(), cap);
  if (!total)
    throw Error(ErrorKind::TooLarge, std::to_string(nf.order()) + "^" +
                                         std::to_string(t.dim()) + " elements exceed the cap");
  std::vector<Vector> out;
  out.reserve(*total);
  Vector w(t.dim());
  for (std::uint64_t idx = 0; idx < *total; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t i = t.dim(); i-- > 0;) {
      w[i] = static_cast<Element>(rest % nf.order());
      rest /= nf.order();
    }
    out.push_back(phi_inverse(nf, t, w));
  }
  return out;
}

}  // namespace nearspace
