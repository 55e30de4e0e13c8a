#pragma once

// Counting R-subgroups of R^n.
//
// A subgroup of dimension l is fixed by its free coordinates J_0 (d of them),
// a set partition of the remaining n - d coordinates into l block supports,
// and the non-pivot values of each block (|R| - 1 choices each):
//
//     Rs(q, l, n) = sum_{d=0}^{n-l} C(n, d) S(n-d, l) (q-1)^(n-d-l)
//
// brute_count and double_count_check reach the same numbers by enumeration.

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bigcount.hpp"
#include "error.hpp"
#include "genclose.hpp"
#include "nearfield.hpp"
#include "nvspace.hpp"

namespace nearspace {

namespace detail {

class StirlingTable {
 public:
  BigCount get(std::uint32_t n, std::uint32_t k) {
    std::lock_guard lock(mu_);
    while (rows_.size() <= n) extend();
    return rows_[n][k];
  }

 private:
  // S(n,k) = k S(n-1,k) + S(n-1,k-1), S(0,0) = 1, S(n,0) = 0.
  void extend() {
    if (rows_.empty()) {
      rows_.push_back({BigCount(1)});
      return;
    }
    const auto& prev = rows_.back();
    const std::size_t n = rows_.size();
    std::vector<BigCount> row(n + 1, BigCount(0));
    for (std::size_t k = 1; k <= n; ++k) {
      BigCount same = k < prev.size() ? prev[k] : BigCount(0);
      row[k] = same * k + prev[k - 1];
    }
    rows_.push_back(std::move(row));
  }

  std::mutex mu_;
  std::vector<std::vector<BigCount>> rows_;
};

inline StirlingTable& stirling_table() {
  static StirlingTable table;
  return table;
}

}  // namespace detail

/// Stirling number of the second kind; zero when k > n.
inline BigCount stirling2(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  return detail::stirling_table().get(n, k);
}

inline BigCount binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigCount acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

/// Number of R-subgroups of dimension l in R^n over a proper nearfield of order q.
inline BigCount count_subgroups(std::uint64_t q, std::uint32_t l, std::uint32_t n) {
  if (q < 3) throw std::invalid_argument("count_subgroups needs q >= 3");
  if (l > n) return 0;
  BigCount total = 0;
  for (std::uint32_t d = 0; d <= n - l; ++d)
    total += binomial(n, d) * stirling2(n - d, l) * big_pow(q - 1, n - d - l);
  return total;
}

inline BigCount count_all(std::uint64_t q, std::uint32_t n) {
  BigCount total = 0;
  for (std::uint32_t l = 0; l <= n; ++l) total += count_subgroups(q, l, n);
  return total;
}

struct CountRow {
  std::uint32_t n = 0;
  std::vector<BigCount> by_dim;  // l = 0..n
  BigCount total;
};

struct CountTable {
  std::uint64_t q = 0;
  std::vector<CountRow> rows;  // n = 0..n_max
};

inline CountTable count_table(std::uint64_t q, std::uint32_t n_max) {
  CountTable table{q, {}};
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    CountRow row{n, {}, 0};
    for (std::uint32_t l = 0; l <= n; ++l) {
      row.by_dim.push_back(count_subgroups(q, l, n));
      row.total += row.by_dim.back();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline constexpr std::uint64_t default_pair_budget = 43'046'721;  // 9^8

/// Subgroup counts of R^n by dimension, found by taking canonical_gen of the
/// empty set, every singleton and every ordered pair. For n <= mdim(q, 2)
/// every subgroup of R^n has a seed set of size at most 2, so nothing is
/// missed.
inline std::vector<std::uint64_t> brute_count(const Nearfield& nf, std::uint32_t n,
                                              unsigned jobs = 1,
                                              std::uint64_t pair_budget = default_pair_budget) {
  const std::uint64_t q = nf.order();
  if (mdim(q, 2) < n)
    throw Error(ErrorKind::TooLarge, "n exceeds mdim(q, 2); pairs do not reach every subgroup");
  const auto singles = arith::checked_pow(q, n, UINT32_MAX);
  if (!singles || !arith::checked_pow(*singles, 2, pair_budget))
    throw Error(ErrorKind::TooLarge, "pair enumeration exceeds the budget");

  auto decode = [&](std::uint64_t idx) {
    Vector v(n);
    for (std::uint32_t j = n; j-- > 0;) {
      v[j] = static_cast<Element>(idx % q);
      idx /= q;
    }
    return v;
  };

  // Singletons are the pairs (v, 0); the empty set is the pair (0, 0).
  auto work = [&](std::uint64_t begin, std::uint64_t end, std::set<CanonicalSubgroup>& seen) {
    std::vector<Vector> pair(2);
    for (std::uint64_t a = begin; a < end; ++a) {
      pair[0] = decode(a);
      for (std::uint64_t b = 0; b < *singles; ++b) {
        pair[1] = decode(b);
        seen.insert(canonical_gen(nf, n, pair).subgroup);
      }
    }
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(*singles)));
  std::vector<std::set<CanonicalSubgroup>> parts(workers);
  if (workers == 1) {
    work(0, *singles, parts[0]);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (*singles + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(work, std::min(*singles, w * chunk), std::min(*singles, (w + 1) * chunk),
                        std::ref(parts[w]));
    for (auto& th : pool) th.join();
  }
  std::set<CanonicalSubgroup> all;
  for (auto& part : parts) all.merge(part);

  std::vector<std::uint64_t> counts(n + 1, 0);
  for (const auto& t : all) ++counts[t.dim()];
  return counts;
}

struct DoubleCountReport {
  bool ok = true;
  std::uint64_t expected_group_size = 0;
  std::uint64_t sequences = 0;
  std::uint64_t groups = 0;
  /// First subgroup whose group size differs, with the observed size.
  std::optional<CanonicalSubgroup> counterexample;
  std::uint64_t observed_size = 0;
};

/// Enumerates every ordered sequence of l nonzero vectors of R^n with
/// pairwise disjoint supports, groups them by the subgroup they span, and
/// checks each group has exactly l! (q-1)^l members.
inline DoubleCountReport double_count_check(const Nearfield& nf, std::uint32_t n,
                                            std::uint32_t l) {
  if (n > 16 || l > n) throw Error(ErrorKind::TooLarge, "double_count_check needs l <= n <= 16");
  const std::uint64_t q = nf.order();
  std::map<CanonicalSubgroup, std::uint64_t> groups;
  std::vector<Vector> seq;

  // Recurse over supports (bitmasks disjoint from `used`), then over all
  // nonzero value assignments on each support.
  auto assign = [&](auto&& self, std::uint32_t used) -> void {
    if (seq.size() == l) {
      ++groups[canonical_from_basis(nf, n, seq)];
      return;
    }
    const std::uint32_t full = (1U << n) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      if ((mask & used) != 0) continue;
      std::vector<std::size_t> supp;
      for (std::size_t j = 0; j < n; ++j)
        if (mask & (1U << j)) supp.push_back(j);
      const std::uint64_t combos = *arith::checked_pow(q - 1, supp.size(), UINT64_MAX);
      for (std::uint64_t c = 0; c < combos; ++c) {
        Vector v(n);
        std::uint64_t rest = c;
        for (auto j : supp) {
          v[j] = static_cast<Element>(1 + rest % (q - 1));
          rest /= (q - 1);
        }
        seq.push_back(std::move(v));
        self(self, used | mask);
        seq.pop_back();
      }
    }
  };
  assign(assign, 0);

  DoubleCountReport report;
  std::uint64_t expected = *arith::checked_pow(q - 1, l, UINT64_MAX);
  for (std::uint32_t i = 2; i <= l; ++i) expected *= i;
  report.expected_group_size = expected;
  report.groups = groups.size();
  for (const auto& [t, size] : groups) {
    report.sequences += size;
    if (size != expected && report.ok) {
      report.ok = false;
      report.counterexample = t;
      report.observed_size = size;
    }
  }
  return report;
}

}  // namespace nearspace
