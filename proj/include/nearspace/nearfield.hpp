#pragma once

// Finite Dickson nearfields with left distributivity a(b + c) = ab + ac.
//
// For a Dickson pair (q, n) the carrier is GF(q^n) with generator g. The
// coupling map psi(t) = (q^t - 1)/(q - 1) mod n permutes {0, ..., n-1}; a
// nonzero a = g^s gets the twist j(a) = psi^-1(s mod n). The classical
// right-distributive product is a * b = a^(q^j(b)) b; we expose its opposite
//
//     a o b = b^(q^j(a)) a,
//
// which is left distributive because x -> x^(q^j) is additive.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "arith.hpp"
#include "error.hpp"
#include "ff.hpp"

namespace nearspace {

struct DicksonPair {
  std::uint64_t q = 2;
  std::uint32_t n = 1;

  friend bool operator==(const DicksonPair&, const DicksonPair&) = default;
};

/// Empty string when (q, n) is a Dickson pair, otherwise the reason it is not.
inline std::string dickson_pair_violation(DicksonPair pair) {
  if (!arith::prime_power(pair.q)) return std::to_string(pair.q) + " is not a prime power";
  if (pair.n == 0) return "n must be positive";
  for (auto r : arith::prime_divisors(pair.n))
    if ((pair.q - 1) % r != 0)
      return "prime " + std::to_string(r) + " of n does not divide q - 1 = " +
             std::to_string(pair.q - 1);
  if (pair.n % 4 == 0 && (pair.q - 1) % 4 != 0) return "4 divides n but not q - 1";
  return {};
}

inline bool is_dickson_pair(DicksonPair pair) { return dickson_pair_violation(pair).empty(); }

/// The proper Dickson pair of the given order with the smallest base q
/// (so 625 resolves to (5, 4) rather than (25, 2)).
inline std::optional<DicksonPair> dickson_pair_for_order(std::uint64_t order) {
  auto pp = arith::prime_power(order);
  if (!pp) return std::nullopt;
  const auto [p, e] = *pp;
  for (std::uint32_t h = 1; h < e; ++h) {
    if (e % h != 0) continue;
    DicksonPair pair{*arith::checked_pow(p, h, UINT64_MAX), e / h};
    if (is_dickson_pair(pair)) return pair;
  }
  return std::nullopt;
}

enum class Axiom : std::size_t {
  AdditiveGroup,
  MultiplicativeGroup,
  LeftDistributive,
  ZeroSymmetric,
  NegOneCommutes,
  TwoTermZeroDistributive,
  PropernessScan,
};

inline constexpr std::size_t axiom_count = 7;

constexpr const char* axiom_name(Axiom a) noexcept {
  switch (a) {
    case Axiom::AdditiveGroup: return "additive_group";
    case Axiom::MultiplicativeGroup: return "multiplicative_group";
    case Axiom::LeftDistributive: return "left_distributive";
    case Axiom::ZeroSymmetric: return "zero_symmetric";
    case Axiom::NegOneCommutes: return "neg_one_commutes";
    case Axiom::TwoTermZeroDistributive: return "two_term_zero_distributive";
    case Axiom::PropernessScan: return "properness_scan";
  }
  return "?";
}

struct Triple {
  Element a = 0, b = 0, c = 0;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct AxiomReport {
  std::array<bool, axiom_count> passed{};
  /// First offending tuple per failed check (empty for passing checks).
  std::array<std::vector<Element>, axiom_count> counterexample{};
  /// (a, b, c) with (a + b) o c != a o c + b o c, if one exists.
  std::optional<Triple> properness_witness;
  bool exhaustive = true;
  std::uint64_t samples = 0;

  bool ok(Axiom a) const { return passed[static_cast<std::size_t>(a)]; }
  bool all_pass() const {
    for (bool b : passed)
      if (!b) return false;
    return true;
  }
};

struct ValidationMode {
  enum class Kind { Exhaustive, Sampled } kind = Kind::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static ValidationMode exhaustive() { return {}; }
  static ValidationMode sampled(std::uint64_t count, std::uint64_t seed) {
    return {Kind::Sampled, count, seed};
  }
};

class Nearfield;
AxiomReport validate_axioms(const Nearfield& nf, ValidationMode mode);

class Nearfield {
 public:
  static constexpr Element table_limit = 4096;
  /// validate_axioms refuses exhaustive mode above this many triples.
  static constexpr std::uint64_t exhaustive_triple_limit = 1'000'000'000;
  /// Construction validates exhaustively up to this many triples (order 256).
  static constexpr std::uint64_t build_exhaustive_limit = std::uint64_t{1} << 24;

  /// Builds and validates; throws InvalidDicksonPair or AxiomValidationFailed.
  /// Orders above the build limit are validated with `fallback` instead.
  explicit Nearfield(DicksonPair pair,
                     ValidationMode fallback = ValidationMode::sampled(1'000'000, 1))
      : pair_(pair), field_(make_field(pair)) {
    init_twist();
    init_inverse();
    if (field_.order() <= table_limit) init_table();

    const std::uint64_t order = field_.order();
    const bool small = order * order * order <= build_exhaustive_limit;
    const AxiomReport report =
        validate_axioms(*this, small ? ValidationMode::exhaustive() : fallback);
    if (!report.all_pass()) {
      std::string failed;
      for (std::size_t i = 0; i < axiom_count; ++i)
        if (!report.passed[i]) failed += std::string(" ") + axiom_name(static_cast<Axiom>(i));
      throw Error(ErrorKind::AxiomValidationFailed,
                  "nearfield (" + std::to_string(pair.q) + "," + std::to_string(pair.n) +
                      ") failed:" + failed);
    }
  }

  DicksonPair pair() const noexcept { return pair_; }
  const Field& field() const noexcept { return field_; }
  Element order() const noexcept { return field_.order(); }
  std::uint32_t characteristic() const noexcept { return field_.characteristic(); }

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return 1; }
  Element neg_one() const noexcept { return field_.neg(1); }

  Element add(Element a, Element b) const noexcept { return field_.add(a, b); }
  Element neg(Element a) const noexcept { return field_.neg(a); }
  Element sub(Element a, Element b) const noexcept { return field_.sub(a, b); }

  Element mul(Element a, Element b) const noexcept {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order() + b];
    return mul_twisted(a, b);
  }

  /// Product evaluated from the twist rule, bypassing the table.
  Element mul_twisted(Element a, Element b) const noexcept {
    if (a == 0 || b == 0) return 0;
    const std::uint64_t n = field_.group_order();
    const std::uint64_t e =
        (arith::mul_mod(field_.log(b), twist_power_[twist(a)], n) + field_.log(a)) % n;
    return field_.exp(e);
  }

  Element inv(Element a) const {
    if (a == 0) throw Error(ErrorKind::DivisionByZero, "nearfield inverse of zero");
    return inverse_[a];
  }

  /// j(a) in {0, ..., n-1}; zero maps to 0.
  std::uint32_t twist(Element a) const noexcept {
    if (a == 0) return 0;
    return psi_inverse_[field_.log(a) % pair_.n];
  }

  /// psi(t) = (q^t - 1)/(q - 1) mod n
  const std::vector<std::uint32_t>& coupling() const noexcept { return psi_; }

  bool has_table() const noexcept { return !table_.empty(); }

 private:
  static Field make_field(DicksonPair pair) {
    if (auto why = dickson_pair_violation(pair); !why.empty())
      throw Error(ErrorKind::InvalidDicksonPair,
                  "(" + std::to_string(pair.q) + "," + std::to_string(pair.n) + "): " + why);
    const auto [p, h] = *arith::prime_power(pair.q);
    return Field(FieldSpec{static_cast<std::uint32_t>(p), h * pair.n});
  }

  void init_twist() {
    const std::uint32_t n = pair_.n;
    const std::uint64_t group = field_.group_order();
    if (group % n != 0)
      throw Error(ErrorKind::InvalidDicksonPair, "n does not divide the multiplicative order");
    psi_.assign(n, 0);
    psi_inverse_.assign(n, n);
    std::uint64_t acc = 0;  // sum_{i<t} q^i mod n
    std::uint64_t qi = 1 % n;
    for (std::uint32_t t = 0; t < n; ++t) {
      psi_[t] = static_cast<std::uint32_t>(acc);
      if (psi_inverse_[acc] != n)
        throw Error(ErrorKind::InvalidDicksonPair, "coupling map is not a bijection");
      psi_inverse_[acc] = t;
      acc = (acc + qi) % n;
      qi = arith::mul_mod(qi, pair_.q, n);
    }
    if (acc != 0)
      throw Error(ErrorKind::InvalidDicksonPair, "psi(n) is not 0 mod n");
    twist_power_.resize(n);
    for (std::uint32_t j = 0; j < n; ++j)
      twist_power_[j] = arith::pow_mod(pair_.q, j, group);
  }

  // a o x = x^(q^j) a = 1 gives x = (a^-1)^(q^-j), and q-Frobenius has order n.
  void init_inverse() {
    const std::uint32_t h = arith::prime_power(pair_.q)->second;
    inverse_.assign(field_.order(), 0);
    for (Element a = 1; a < field_.order(); ++a) {
      const std::uint32_t back = (pair_.n - twist(a)) % pair_.n;
      inverse_[a] = field_.frobenius(field_.inv(a), std::uint64_t{h} * back);
    }
  }

  void init_table() {
    const std::size_t order = field_.order();
    table_.resize(order * order);
    for (Element a = 0; a < order; ++a)
      for (Element b = 0; b < order; ++b)
        table_[a * order + b] = static_cast<std::uint16_t>(mul_twisted(a, b));
  }

  DicksonPair pair_;
  Field field_;
  std::vector<std::uint32_t> psi_;
  std::vector<std::uint32_t> psi_inverse_;
  std::vector<std::uint64_t> twist_power_;
  std::vector<Element> inverse_;
  std::vector<std::uint16_t> table_;
};

inline Nearfield build_dickson(DicksonPair pair,
                               ValidationMode fallback = ValidationMode::sampled(1'000'000, 1)) {
  return Nearfield(pair, fallback);
}

namespace detail {

class AxiomChecker {
 public:
  AxiomChecker(const Nearfield& nf, AxiomReport& report) : nf_(nf), report_(report) {
    report_.passed.fill(true);
  }

  void fail(Axiom a, std::vector<Element> tuple) {
    auto i = static_cast<std::size_t>(a);
    if (report_.passed[i]) {
      report_.passed[i] = false;
      report_.counterexample[i] = std::move(tuple);
    }
  }

  bool failed(Axiom a) const { return !report_.ok(a); }

  // One-variable checks, always exhaustive; pairs too when q^2 <= 2^24.
  void unary_and_pair_checks() {
    const Element q = nf_.order();
    const Element m1 = nf_.neg_one();
    for (Element a = 0; a < q; ++a) {
      if (nf_.add(a, 0) != a || nf_.add(a, nf_.neg(a)) != 0)
        fail(Axiom::AdditiveGroup, {a});
      if (nf_.mul(0, a) != 0 || nf_.mul(a, 0) != 0) fail(Axiom::ZeroSymmetric, {a});
      if (nf_.mul(m1, a) != nf_.neg(a) || nf_.mul(a, m1) != nf_.neg(a))
        fail(Axiom::NegOneCommutes, {a});
      if (a != 0) {
        const Element ai = nf_.inv(a);
        if (nf_.mul(1, a) != a || nf_.mul(a, 1) != a || nf_.mul(a, ai) != 1 ||
            nf_.mul(ai, a) != 1)
          fail(Axiom::MultiplicativeGroup, {a});
      }
      if (std::uint64_t{q} * q > pair_limit) continue;
      for (Element b = 0; b < q; ++b) pair(a, b);
    }
  }

  void pair(Element a, Element b) {
    if (nf_.add(a, b) != nf_.add(b, a)) fail(Axiom::AdditiveGroup, {a, b});
    if (a != 0 && b != 0 && nf_.mul(a, b) == 0) fail(Axiom::MultiplicativeGroup, {a, b});
  }

  static constexpr std::uint64_t pair_limit = std::uint64_t{1} << 24;

  void triple(Element a, Element b, Element c) {
    if (nf_.add(nf_.add(a, b), c) != nf_.add(a, nf_.add(b, c)))
      fail(Axiom::AdditiveGroup, {a, b, c});
    if (nf_.mul(nf_.mul(a, b), c) != nf_.mul(a, nf_.mul(b, c)))
      fail(Axiom::MultiplicativeGroup, {a, b, c});
    if (nf_.mul(a, nf_.add(b, c)) != nf_.add(nf_.mul(a, b), nf_.mul(a, c)))
      fail(Axiom::LeftDistributive, {a, b, c});
  }

  // alpha o x + beta o y = 0  implies  alpha o x o gamma + beta o y o gamma = 0.
  // y is solved from the hypothesis rather than enumerated.
  void two_term(Element alpha, Element x, Element beta, Element gamma) {
    const Element ax = nf_.mul(alpha, x);
    auto check = [&](Element y) {
      const Element by = nf_.mul(beta, y);
      if (nf_.add(ax, by) != 0) return;
      if (nf_.add(nf_.mul(ax, gamma), nf_.mul(by, gamma)) != 0)
        fail(Axiom::TwoTermZeroDistributive, {alpha, x, beta, y, gamma});
    };
    if (beta != 0) {
      check(nf_.mul(nf_.inv(beta), nf_.neg(ax)));
    } else if (ax == 0) {
      check(0);
    }
  }

  bool right_distributes(Element a, Element b, Element c) const {
    return nf_.mul(nf_.add(a, b), c) == nf_.add(nf_.mul(a, c), nf_.mul(b, c));
  }

 private:
  const Nearfield& nf_;
  AxiomReport& report_;
};

}  // namespace detail

/// Runs the seven nearfield checks. Exhaustive mode enumerates all triples;
/// sampled mode draws `samples` random tuples for the triple and quadruple
/// checks. One-variable checks stay exhaustive, and so do pairs up to 2^24.
inline AxiomReport validate_axioms(const Nearfield& nf, ValidationMode mode) {
  AxiomReport report;
  detail::AxiomChecker check(nf, report);
  const Element q = nf.order();
  check.unary_and_pair_checks();

  if (mode.kind == ValidationMode::Kind::Exhaustive) {
    if (std::uint64_t{q} * q * q > Nearfield::exhaustive_triple_limit)
      throw Error(ErrorKind::TooLarge, "exhaustive validation needs order^3 <= 10^9");
    report.exhaustive = true;
    for (Element a = 0; a < q; ++a)
      for (Element b = 0; b < q; ++b)
        for (Element c = 0; c < q; ++c) check.triple(a, b, c);

    // The hypothesis only depends on the products alpha o x, so for large
    // orders x is pinned to 1 (every value is reached as alpha o 1); the
    // full quadruple space is enumerated while it stays below 2^32.
    const std::uint64_t q4 = std::uint64_t{q} * q * q * q;
    const Element x_end = q4 <= (std::uint64_t{1} << 32) ? q : 2;
    for (Element alpha = 0; alpha < q; ++alpha)
      for (Element x = (x_end == 2 ? 1 : 0); x < x_end; ++x)
        for (Element beta = 0; beta < q; ++beta)
          for (Element gamma = 0; gamma < q; ++gamma) check.two_term(alpha, x, beta, gamma);

    // Index-order scan, first hit wins.
    for (Element a = 0; a < q && !report.properness_witness; ++a)
      for (Element b = 0; b < q && !report.properness_witness; ++b)
        for (Element c = 0; c < q; ++c)
          if (!check.right_distributes(a, b, c)) {
            report.properness_witness = Triple{a, b, c};
            break;
          }
  } else {
    report.exhaustive = false;
    report.samples = mode.samples;
    std::mt19937_64 rng(mode.seed);
    std::uniform_int_distribution<Element> pick(0, q - 1);
    for (std::uint64_t i = 0; i < mode.samples; ++i) {
      const Element a = pick(rng), b = pick(rng), c = pick(rng);
      check.pair(a, b);
      check.triple(a, b, c);
      const Element d = pick(rng);
      check.two_term(a, b, c, d);
    }
    // Index-order scan over the first `samples` triples.
    const std::uint64_t q3 = std::uint64_t{q} * q * q;
    for (std::uint64_t i = 0; i < std::min(q3, mode.samples); ++i) {
      const auto a = static_cast<Element>(i / (std::uint64_t{q} * q));
      const auto b = static_cast<Element>(i / q % q);
      const auto c = static_cast<Element>(i % q);
      if (!check.right_distributes(a, b, c)) {
        report.properness_witness = Triple{a, b, c};
        break;
      }
    }
  }

  if (report.properness_witness) {
    const auto& w = *report.properness_witness;
    if (check.right_distributes(w.a, w.b, w.c))
      check.fail(Axiom::PropernessScan, {w.a, w.b, w.c});
  }
  return report;
}

}  // namespace nearspace
