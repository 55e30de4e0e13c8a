#pragma once

// Generated R-subgroups, computed two ways.
//
// canonical_gen classifies the columns of the k x n matrix whose rows are the
// input vectors. gen(V) is the orthogonal set of all simple vectors that are
// orthogonal to V (see docs/gen-derivation.md):
//   * a weight-one e with e_j != 0 is orthogonal to V iff column j is zero;
//   * a weight-two e on {j, j'} is orthogonal to V iff column j' is a left
//     multiple lambda o (column j).
// So zero columns are forced to 0, columns in one left-multiple class are tied
// by x_j = u_j o x_pivot, and distinct classes are independent.
//
// lc_closure is the independent route: iterate LC_{i+1} = additive span of
// {w o lambda : w in LC_i} until nothing changes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "bigcount.hpp"
#include "error.hpp"
#include "nearfield.hpp"
#include "nvspace.hpp"

namespace nearspace {

struct GenResult {
  CanonicalSubgroup subgroup;
  /// Simple vectors D with gen(V) = D^perp.
  std::vector<SimpleVector> certificates;
  /// Nonzero columns grouped into mutual-left-multiple classes, ascending.
  std::vector<std::vector<std::size_t>> column_classes;
};

inline GenResult canonical_gen(const Nearfield& nf, std::size_t n, std::span<const Vector> vs) {
  for (const auto& v : vs) detail::require_dim(v.size(), n);
  const std::size_t k = vs.size();

  GenResult out;
  out.subgroup.n = n;
  std::vector<std::size_t> zero_columns;
  std::map<std::vector<Element>, std::size_t> class_of;
  std::vector<Element> column(k);
  std::vector<Element> normalized(k);

  for (std::size_t j = 0; j < n; ++j) {
    std::optional<std::size_t> lead;
    for (std::size_t t = 0; t < k; ++t) {
      column[t] = vs[t][j];
      if (!lead && column[t] != 0) lead = t;
    }
    if (!lead) {
      zero_columns.push_back(j);
      continue;
    }
    const Element scale = nf.inv(column[*lead]);
    for (std::size_t t = 0; t < k; ++t) normalized[t] = nf.mul(scale, column[t]);
    auto [it, fresh] = class_of.try_emplace(normalized, out.column_classes.size());
    if (fresh) out.column_classes.emplace_back();
    out.column_classes[it->second].push_back(j);
  }

  // Classes were opened in column order, so blocks come out sorted by pivot.
  for (const auto& cls : out.column_classes) {
    const std::size_t pivot = cls.front();
    Block block{pivot, {{pivot, 1}}};
    for (std::size_t idx = 1; idx < cls.size(); ++idx) {
      const std::size_t j = cls[idx];
      std::optional<Element> factor;
      for (std::size_t t = 0; t < k; ++t) {
        const Element cp = vs[t][pivot];
        const Element cj = vs[t][j];
        if (cp == 0) {
          if (cj != 0)
            throw Error(ErrorKind::InternalInconsistency, "zero patterns differ within a class");
          continue;
        }
        const Element f = nf.mul(cj, nf.inv(cp));
        if (factor && *factor != f)
          throw Error(ErrorKind::InternalInconsistency,
                      "left factor differs across rows at column " + std::to_string(j));
        factor = f;
      }
      block.values.emplace_back(j, *factor);
    }
    out.subgroup.blocks.push_back(std::move(block));
  }

  for (auto j : zero_columns) out.certificates.push_back({n, {{j, 1}}});
  // e_pivot = 1, e_j = -(u_j^-1): <e, u r> = r - u_j^-1 o u_j o r = 0.
  for (const auto& block : out.subgroup.blocks)
    for (std::size_t idx = 1; idx < block.values.size(); ++idx) {
      auto [j, u] = block.values[idx];
      out.certificates.push_back({n, {{block.pivot, 1}, {j, nf.neg(nf.inv(u))}}});
    }
  return out;
}

inline GenResult canonical_gen(const Nearfield& nf, std::size_t n, const std::vector<Vector>& vs) {
  return canonical_gen(nf, n, std::span<const Vector>(vs));
}

struct ClosureTrace {
  /// |LC_0|, |LC_1|, ..., |LC_index|; strictly increasing.
  std::vector<std::uint64_t> levels;
  std::uint32_t index = 0;
  /// The final level, sorted.
  std::vector<Vector> elements;
};

namespace detail {

// Set of vectors of R^n kept as a flat digit buffer. Membership uses the
// base-q code: a bitmap for small spaces, a hash of codes while q^n fits in
// 64 bits, and a hash of whole vectors beyond that.
class VectorSet {
 public:
  VectorSet(std::size_t n, std::uint64_t q) : n_(n), q_(q) {
    space_ = arith::checked_pow(q, n, UINT64_MAX);
    if (space_ && *space_ <= dense_limit) dense_.assign(*space_, false);
  }

  std::size_t dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ == 0 ? count_ : digits_.size() / n_; }
  const Element* row(std::size_t i) const noexcept { return digits_.data() + i * n_; }

  bool contains(const Element* v) const {
    if (!space_) return big_.count(to_vector(v)) != 0;
    const std::uint64_t c = code(v);
    return dense_.empty() ? codes_.count(c) != 0 : dense_[c];
  }

  bool insert(const Element* v) {
    if (!space_) {
      if (!big_.insert(to_vector(v)).second) return false;
    } else {
      const std::uint64_t c = code(v);
      if (dense_.empty()) {
        if (!codes_.insert(c).second) return false;
      } else {
        if (dense_[c]) return false;
        dense_[c] = true;
      }
    }
    digits_.insert(digits_.end(), v, v + n_);
    ++count_;
    return true;
  }

  std::vector<Vector> vectors() const {
    std::vector<Vector> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(to_vector(row(i)));
    return out;
  }

 private:
  static constexpr std::uint64_t dense_limit = std::uint64_t{1} << 22;

  std::uint64_t code(const Element* v) const noexcept {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n_; ++i) c = c * q_ + v[i];
    return c;
  }
  Vector to_vector(const Element* v) const { return Vector(std::vector<Element>(v, v + n_)); }

  std::size_t n_;
  std::uint64_t q_;
  std::optional<std::uint64_t> space_;
  std::vector<bool> dense_;
  std::unordered_set<std::uint64_t> codes_;
  std::unordered_set<Vector, VectorHash> big_;
  std::vector<Element> digits_;
  std::size_t count_ = 0;
};

// Additive span of {w o lambda : w in level, lambda in R}. The additive group
// has exponent p, so adjoining g to a subgroup H gives the disjoint union of
// H + c g for c = 0..p-1.
inline VectorSet next_level(const Nearfield& nf, std::size_t n, const VectorSet& level,
                            std::uint64_t cap, std::size_t dim_hint) {
  VectorSet h(n, nf.order());
  std::vector<Element> g(n, 0), multiple(n), sum(n);
  h.insert(g.data());
  const std::uint32_t p = nf.characteristic();
  for (std::size_t w = 0; w < level.size(); ++w) {
    const Element* src = level.row(w);
    for (Element lambda = 1; lambda < nf.order(); ++lambda) {
      for (std::size_t i = 0; i < n; ++i) g[i] = nf.mul(src[i], lambda);
      if (h.contains(g.data())) continue;
      const std::size_t base = h.size();
      if (static_cast<std::uint64_t>(base) * p > cap)
        throw Error(ErrorKind::CapExceeded,
                    "closure exceeds cap " + std::to_string(cap) + " (canonical dim " +
                        std::to_string(dim_hint) + ")");
      multiple = g;
      for (std::uint32_t c = 1; c < p; ++c) {
        for (std::size_t r = 0; r < base; ++r) {
          const Element* x = h.row(r);
          for (std::size_t i = 0; i < n; ++i) sum[i] = nf.add(x[i], multiple[i]);
          h.insert(sum.data());
        }
        for (std::size_t i = 0; i < n; ++i) multiple[i] = nf.add(multiple[i], g[i]);
      }
    }
  }
  return h;
}

}  // namespace detail

inline constexpr std::uint64_t default_closure_cap = 1'000'000;

inline ClosureTrace lc_closure(const Nearfield& nf, std::size_t n, std::span<const Vector> vs,
                               std::uint64_t cap = default_closure_cap) {
  for (const auto& v : vs) detail::require_dim(v.size(), n);
  const std::size_t dim = canonical_gen(nf, n, vs).subgroup.dim();
  if (!arith::checked_pow(nf.order(), dim, cap))
    throw Error(ErrorKind::CapExceeded, std::to_string(nf.order()) + "^" + std::to_string(dim) +
                                            " exceeds cap " + std::to_string(cap) +
                                            " (canonical dim " + std::to_string(dim) + ")");

  detail::VectorSet level(n, nf.order());
  level.insert(Vector(n).coords.data());
  for (const auto& v : vs) level.insert(v.coords.data());

  ClosureTrace trace;
  trace.levels.push_back(level.size());
  for (;;) {
    detail::VectorSet next = detail::next_level(nf, n, level, cap, dim);
    if (next.size() == level.size()) break;  // LC_i is contained in LC_{i+1}
    trace.levels.push_back(next.size());
    level = std::move(next);
  }
  trace.index = static_cast<std::uint32_t>(trace.levels.size() - 1);
  trace.elements = level.vectors();
  std::sort(trace.elements.begin(), trace.elements.end());
  return trace;
}

inline ClosureTrace lc_closure(const Nearfield& nf, std::size_t n, const std::vector<Vector>& vs,
                               std::uint64_t cap = default_closure_cap) {
  return lc_closure(nf, n, std::span<const Vector>(vs), cap);
}

/// (q^k - 1)/(q - 1): the largest n for which k vectors can generate R^n.
inline BigCount mdim(std::uint64_t q, std::uint32_t k) {
  BigCount sum = 0;
  BigCount power = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    sum += power;
    power *= q;
  }
  return sum;
}

/// Smallest k with mdim(q, k) >= l.
inline std::uint32_t seed_number(std::uint64_t q, std::uint64_t l) {
  std::uint32_t k = 0;
  BigCount reach = 0;
  BigCount power = 1;
  while (reach < l) {
    reach += power;
    power *= q;
    ++k;
  }
  return k;
}

inline constexpr std::uint64_t default_column_cap = std::uint64_t{1} << 20;

/// The k x |c(k,R)| matrix whose columns are the nonzero vectors of R^k with
/// leading nonzero entry 1, in lexicographic order.
inline Matrix build_seed_matrix(const Nearfield& nf, std::uint32_t k,
                                std::uint64_t column_cap = default_column_cap) {
  const BigCount cols = mdim(nf.order(), k);
  if (cols > column_cap)
    throw Error(ErrorKind::TooLarge, "seed matrix would have " + cols.str() + " columns");
  const auto ncols = static_cast<std::size_t>(cols);
  Matrix rows(k, Vector(ncols));
  std::size_t col = 0;
  // Columns with the most leading zeros sort first.
  for (std::uint32_t lead = k; lead-- > 0;) {
    const std::uint32_t tail = k - 1 - lead;
    const std::uint64_t count = *arith::checked_pow(nf.order(), tail, UINT64_MAX);
    for (std::uint64_t idx = 0; idx < count; ++idx, ++col) {
      rows[lead][col] = 1;
      std::uint64_t rest = idx;
      for (std::uint32_t t = k; t-- > lead + 1;) {
        rows[t][col] = static_cast<Element>(rest % nf.order());
        rest /= nf.order();
      }
    }
  }
  return rows;
}

/// seed_number(q, dim T) vectors of T generating T: the first dim columns of
/// the seed matrix, mapped back into T through phi_inverse.
inline std::vector<Vector> find_seed_set(const Nearfield& nf, const CanonicalSubgroup& t) {
  const std::size_t l = t.dim();
  const std::uint32_t k = seed_number(nf.order(), l);
  std::vector<Vector> out;
  if (k == 0) return out;
  const Matrix seed = build_seed_matrix(nf, k);
  for (const auto& row : seed) {
    Vector w(std::vector<Element>(row.coords.begin(), row.coords.begin() + static_cast<long>(l)));
    out.push_back(phi_inverse(nf, t, w));
  }
  if (canonical_gen(nf, t.n, out).subgroup != t)
    throw Error(ErrorKind::InternalInconsistency, "seed set does not regenerate the subgroup");
  return out;
}

struct ExhaustiveSearch {};
struct RandomSearch {
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};
using SearchStrategy = std::variant<ExhaustiveSearch, RandomSearch>;

struct SearchOptions {
  std::uint64_t closure_cap = default_closure_cap;
  std::uint64_t instance_cap = 10'000'000;
  unsigned jobs = 1;
};

struct SearchReport {
  std::uint32_t max_index = 0;
  /// Input tuples attaining max_index, in enumeration order.
  std::vector<std::vector<Vector>> witnesses;
  /// index -> number of instances with that index
  std::map<std::uint32_t, std::uint64_t> counts;
  std::uint64_t instances = 0;
  /// Instances whose closure would exceed the cap.
  std::uint64_t skipped = 0;
};

namespace detail {

template <class Instance>
SearchReport run_search(const Nearfield& nf, std::uint64_t total, Instance&& instance,
                        const SearchOptions& opt) {
  constexpr std::int64_t skipped_marker = -1;
  std::vector<std::int64_t> index(total, skipped_marker);
  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const auto vs = instance(i);
      try {
        index[i] = lc_closure(nf, vs.empty() ? 0 : vs.front().size(), vs, opt.closure_cap).index;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::CapExceeded) throw;
      }
    }
  };
  const unsigned jobs = std::max(1U, opt.jobs);
  if (jobs == 1 || total < jobs) {
    work(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w)
      pool.emplace_back(work, std::min(total, w * chunk), std::min(total, (w + 1) * chunk));
    for (auto& th : pool) th.join();
  }

  SearchReport report;
  report.instances = total;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (index[i] == skipped_marker) {
      ++report.skipped;
      continue;
    }
    const auto idx = static_cast<std::uint32_t>(index[i]);
    ++report.counts[idx];
    if (idx > report.max_index) {
      report.max_index = idx;
      report.witnesses.clear();
    }
    if (idx == report.max_index) report.witnesses.push_back(instance(i));
  }
  for (const auto& w : report.witnesses)
    if (lc_closure(nf, w.front().size(), w, opt.closure_cap).index != report.max_index)
      throw Error(ErrorKind::InternalInconsistency, "witness failed re-verification");
  return report;
}

inline void merge_into(SearchReport& acc, SearchReport part) {
  acc.instances += part.instances;
  acc.skipped += part.skipped;
  for (auto [idx, c] : part.counts) acc.counts[idx] += c;
  if (part.max_index > acc.max_index) {
    acc.max_index = part.max_index;
    acc.witnesses = std::move(part.witnesses);
  } else if (part.max_index == acc.max_index) {
    for (auto& w : part.witnesses) acc.witnesses.push_back(std::move(w));
  }
}

}  // namespace detail

struct Range {
  std::uint32_t lo = 1;
  std::uint32_t hi = 1;
};

/// Looks for tuples with a large linearity index.
///
/// Exhaustive mode walks every (n, k) in range over normalized tuples: each
/// column is zero or has leading entry 1. Left-multiplying a coordinate by a
/// nonzero scalar is an automorphism of R^n, so this loses no index value.
/// Random mode draws `count` tuples with uniform n, k and coordinates.
inline SearchReport search_linearity_index(const Nearfield& nf, Range n_range, Range k_range,
                                           const SearchStrategy& strategy,
                                           const SearchOptions& opt = {}) {
  if (n_range.lo > n_range.hi || k_range.lo > k_range.hi || k_range.lo == 0)
    throw Error(ErrorKind::DimensionMismatch, "empty search range");
  SearchReport report;

  if (const auto* rnd = std::get_if<RandomSearch>(&strategy)) {
    std::mt19937_64 rng(rnd->seed);
    std::uniform_int_distribution<std::uint32_t> pick_n(n_range.lo, n_range.hi);
    std::uniform_int_distribution<std::uint32_t> pick_k(k_range.lo, k_range.hi);
    std::uniform_int_distribution<Element> pick(0, nf.order() - 1);
    std::vector<std::vector<Vector>> tuples;
    tuples.reserve(rnd->count);
    for (std::uint64_t i = 0; i < rnd->count; ++i) {
      const std::uint32_t n = pick_n(rng);
      const std::uint32_t k = pick_k(rng);
      std::vector<Vector> vs(k, Vector(n));
      for (auto& v : vs)
        for (auto& x : v.coords) x = pick(rng);
      tuples.push_back(std::move(vs));
    }
    return detail::run_search(
        nf, tuples.size(), [&](std::uint64_t i) { return tuples[i]; }, opt);
  }

  for (std::uint32_t n = n_range.lo; n <= n_range.hi; ++n)
    for (std::uint32_t k = k_range.lo; k <= k_range.hi; ++k) {
      std::vector<Vector> columns{Vector(k)};
      const Matrix seed = build_seed_matrix(nf, k);
      for (std::size_t c = 0; c < seed.front().size(); ++c) {
        Vector col(k);
        for (std::uint32_t t = 0; t < k; ++t) col[t] = seed[t][c];
        columns.push_back(std::move(col));
      }
      const auto total = arith::checked_pow(columns.size(), n, opt.instance_cap);
      if (!total)
        throw Error(ErrorKind::TooLarge, "exhaustive search at n=" + std::to_string(n) +
                                             ", k=" + std::to_string(k) + " is too large");
      auto instance = [&, n, k](std::uint64_t i) {
        std::vector<Vector> vs(k, Vector(n));
        for (std::uint32_t j = n; j-- > 0;) {
          const Vector& col = columns[i % columns.size()];
          i /= columns.size();
          for (std::uint32_t t = 0; t < k; ++t) vs[t][j] = col[t];
        }
        return vs;
      };
      detail::merge_into(report, detail::run_search(nf, *total, instance, opt));
    }
  return report;
}

}  // namespace nearspace
