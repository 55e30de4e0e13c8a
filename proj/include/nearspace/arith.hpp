#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace nearspace::arith {

constexpr bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime divisors in increasing order.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// (p, h) with n == p^h, or nothing when n is not a prime power.
inline std::optional<std::pair<std::uint64_t, std::uint32_t>> prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  auto primes = prime_divisors(n);
  if (primes.size() != 1) return std::nullopt;
  std::uint32_t h = 0;
  for (std::uint64_t m = n; m > 1; m /= primes[0]) ++h;
  return std::pair{primes[0], h};
}

/// base^exp, or nothing if the result exceeds limit.
constexpr std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp,
                                                   std::uint64_t limit) noexcept {
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && acc > limit / base) return std::nullopt;
    acc *= base;
  }
  if (acc > limit) return std::nullopt;
  return acc;
}

constexpr std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

constexpr std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) acc = mul_mod(acc, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return acc;
}

}  // namespace nearspace::arith
