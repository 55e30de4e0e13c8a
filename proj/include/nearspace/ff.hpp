#pragma once

// Finite fields GF(p^m) with exp/log tables.
//
// An element is stored as its index: the base-p integer whose i-th digit is
// the coefficient of X^i in the residue polynomial modulo the field modulus.
// Index 0 is zero and index 1 is one for every field.

#include <cstdint>
#include <string>
#include <vector>

#include "arith.hpp"
#include "error.hpp"

namespace nearspace {

using Element = std::uint32_t;

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
};

class Field {
 public:
  static constexpr std::uint64_t default_order_cap = std::uint64_t{1} << 20;

  explicit Field(FieldSpec spec, std::uint64_t order_cap = default_order_cap) : spec_(spec) {
    if (!arith::is_prime(spec.p))
      throw Error(ErrorKind::NotPrime, std::to_string(spec.p) + " is not prime");
    if (spec.m == 0) throw Error(ErrorKind::TooLarge, "field exponent must be positive");
    auto order = arith::checked_pow(spec.p, spec.m, order_cap);
    if (!order)
      throw Error(ErrorKind::TooLarge, std::to_string(spec.p) + "^" + std::to_string(spec.m) +
                                           " exceeds the order cap " + std::to_string(order_cap));
    order_ = static_cast<Element>(*order);
    find_modulus();
    find_generator();
    build_tables();
  }

  std::uint32_t characteristic() const noexcept { return spec_.p; }
  std::uint32_t degree() const noexcept { return spec_.m; }
  FieldSpec spec() const noexcept { return spec_; }
  Element order() const noexcept { return order_; }
  Element generator() const noexcept { return generator_; }
  /// Coefficients c_0..c_m of the monic modulus, low degree first.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return 1; }

  Element add(Element a, Element b) const noexcept {
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * order_ + b];
    return add_digits(a, b);
  }
  Element neg(Element a) const noexcept { return neg_table_[a]; }
  Element sub(Element a, Element b) const noexcept { return add(a, neg(b)); }

  Element mul(Element a, Element b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  Element inv(Element a) const {
    if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    return exp_[(group_order() - log_[a]) % group_order()];
  }

  Element pow(Element a, std::uint64_t e) const noexcept {
    if (a == 0) return e == 0 ? 1 : 0;
    const std::uint64_t n = group_order();
    return exp_[arith::mul_mod(log_[a], e % n, n)];
  }

  /// a^(p^j)
  Element frobenius(Element a, std::uint64_t j) const noexcept {
    if (a == 0) return 0;
    const std::uint64_t n = group_order();
    return exp_[arith::mul_mod(log_[a], arith::pow_mod(spec_.p, j, n), n)];
  }

  /// Discrete logarithm to the generator; a must be nonzero.
  std::uint32_t log(Element a) const noexcept { return log_[a]; }
  /// generator^e
  Element exp(std::uint64_t e) const noexcept { return exp_[e % group_order()]; }

  std::uint32_t group_order() const noexcept { return order_ - 1; }

  /// a + a + ... + a (c times)
  Element scale(Element a, std::uint32_t c) const noexcept {
    Element acc = 0;
    for (std::uint32_t i = 0; i < c % spec_.p; ++i) acc = add(acc, a);
    return acc;
  }

  std::vector<std::uint32_t> digits(Element a) const {
    std::vector<std::uint32_t> d(spec_.m, 0);
    for (std::uint32_t i = 0; i < spec_.m; ++i, a /= spec_.p) d[i] = a % spec_.p;
    return d;
  }

 private:
  using Poly = std::vector<std::uint32_t>;

  Element add_digits(Element a, Element b) const noexcept {
    if (spec_.p == 2) return a ^ b;
    Element out = 0;
    Element place = 1;
    while (a != 0 || b != 0) {
      out += ((a % spec_.p + b % spec_.p) % spec_.p) * place;
      a /= spec_.p;
      b /= spec_.p;
      place *= spec_.p;
    }
    return out;
  }

  Element neg_digits(Element a) const noexcept {
    Element out = 0;
    Element place = 1;
    while (a != 0) {
      out += ((spec_.p - a % spec_.p) % spec_.p) * place;
      a /= spec_.p;
      place *= spec_.p;
    }
    return out;
  }

  // Remainder of f modulo the monic polynomial g, both low degree first.
  Poly poly_mod(Poly f, const Poly& g) const {
    const std::uint32_t p = spec_.p;
    const std::size_t dg = g.size() - 1;
    for (std::size_t i = f.size(); i-- > dg;) {
      const std::uint32_t c = f[i];
      if (c == 0) continue;
      for (std::size_t k = 0; k <= dg; ++k)
        f[i - dg + k] = static_cast<std::uint32_t>(
            (f[i - dg + k] + std::uint64_t{p - c} * g[k]) % p);
    }
    f.resize(dg);
    return f;
  }

  Poly monic_from_index(std::uint64_t lower, std::uint32_t deg) const {
    Poly f(deg + 1, 0);
    for (std::uint32_t i = 0; i < deg; ++i, lower /= spec_.p) f[i] = lower % spec_.p;
    f[deg] = 1;
    return f;
  }

  bool irreducible(const Poly& f) const {
    const auto deg = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
      const std::uint64_t count = *arith::checked_pow(spec_.p, d, UINT64_MAX);
      for (std::uint64_t lower = 0; lower < count; ++lower) {
        const Poly rem = poly_mod(f, monic_from_index(lower, d));
        bool zero = true;
        for (auto c : rem) zero = zero && c == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  void find_modulus() {
    const std::uint64_t count = order_;
    for (std::uint64_t lower = 0; lower < count; ++lower) {
      Poly f = monic_from_index(lower, spec_.m);
      if (spec_.m > 1 && f[0] == 0) continue;
      if (irreducible(f)) {
        modulus_ = std::move(f);
        return;
      }
    }
    throw Error(ErrorKind::InternalInconsistency, "no irreducible modulus found");
  }

  Poly to_poly(Element a) const {
    Poly f(spec_.m, 0);
    for (std::uint32_t i = 0; i < spec_.m; ++i, a /= spec_.p) f[i] = a % spec_.p;
    return f;
  }

  Element from_poly(const Poly& f) const {
    Element out = 0;
    for (std::size_t i = f.size(); i-- > 0;) out = out * spec_.p + f[i];
    return out;
  }

  // Schoolbook product modulo the modulus; only used while building tables.
  Element slow_mul(Element a, Element b) const {
    const Poly fa = to_poly(a);
    const Poly fb = to_poly(b);
    Poly prod(2 * spec_.m, 0);
    for (std::uint32_t i = 0; i < spec_.m; ++i)
      for (std::uint32_t j = 0; j < spec_.m; ++j)
        prod[i + j] =
            static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{fa[i]} * fb[j]) % spec_.p);
    return from_poly(poly_mod(std::move(prod), modulus_));
  }

  Element slow_pow(Element a, std::uint64_t e) const {
    Element acc = 1;
    while (e != 0) {
      if (e & 1U) acc = slow_mul(acc, a);
      a = slow_mul(a, a);
      e >>= 1U;
    }
    return acc;
  }

  void find_generator() {
    const std::uint64_t n = group_order();
    const auto primes = arith::prime_divisors(n);
    for (Element g = 1; g < order_; ++g) {
      bool primitive = true;
      for (auto r : primes) primitive = primitive && slow_pow(g, n / r) != 1;
      if (primitive) {
        generator_ = g;
        return;
      }
    }
    throw Error(ErrorKind::InternalInconsistency, "no multiplicative generator found");
  }

  void build_tables() {
    const std::uint32_t n = group_order();
    exp_.assign(2 * static_cast<std::size_t>(n), 0);
    log_.assign(order_, 0);
    Element x = 1;
    for (std::uint32_t e = 0; e < n; ++e) {
      exp_[e] = exp_[e + n] = x;
      log_[x] = e;
      x = slow_mul(x, generator_);
    }
    if (x != 1) throw Error(ErrorKind::InternalInconsistency, "generator order mismatch");

    neg_table_.resize(order_);
    for (Element a = 0; a < order_; ++a) neg_table_[a] = neg_digits(a);
    if (order_ <= add_table_limit) {
      add_table_.resize(static_cast<std::size_t>(order_) * order_);
      for (Element a = 0; a < order_; ++a)
        for (Element b = 0; b < order_; ++b)
          add_table_[static_cast<std::size_t>(a) * order_ + b] = add_digits(a, b);
    }
  }

  static constexpr Element add_table_limit = 1024;

  FieldSpec spec_;
  Element order_ = 0;
  Poly modulus_;
  Element generator_ = 1;
  std::vector<Element> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Element> neg_table_;
  std::vector<Element> add_table_;
};

inline Field build_field(FieldSpec spec, std::uint64_t order_cap = Field::default_order_cap) {
  return Field(spec, order_cap);
}

}  // namespace nearspace
