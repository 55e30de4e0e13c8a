#pragma once

// The acceptance suite, shared by the `acceptance` test binary and the
// `verify` subcommand. Each criterion prints one PASS/FAIL line.

#include <chrono>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "counting.hpp"
#include "genclose.hpp"
#include "nearfield.hpp"
#include "nvspace.hpp"
#include "reference_data.hpp"

namespace nearspace::verify {

struct Options {
  /// Reference tables; defaults to the embedded copy.
  nlohmann::json tables = nlohmann::json::parse(reference::tables_json);
  /// Adds brute_count at n = 4 (about a minute).
  bool slow = false;
  unsigned jobs = 1;
};

struct Result {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

namespace detail {

// Collects failure notes; a criterion passes when none were recorded.
class Notes {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string summary(const std::string& success) const {
    if (ok()) return success;
    std::string out = std::to_string(count_) + " mismatch(es): ";
    for (std::size_t i = 0; i < failures_.size(); ++i) out += (i ? "; " : "") + failures_[i];
    return out;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

inline const Nearfield& nf9() {
  static const Nearfield nf({3, 2});
  return nf;
}

inline std::string str(const BigCount& x) { return x.str(); }

inline void time_limit(Notes& notes, double seconds, double limit) {
  notes.check(seconds < limit, "took " + std::to_string(seconds) + " s, limit " +
                                   std::to_string(limit) + " s");
}

using Clock = std::chrono::steady_clock;

inline double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline Result table_totals(const Options& opt) {
  Notes notes;
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  for (const auto& t : opt.tables.at("tables")) {
    const auto q = t.at("q").get<std::uint64_t>();
    const auto& totals = t.at("totals");
    const auto& by_dim = t.at("by_dim");
    const auto n_max = static_cast<std::uint32_t>(std::max(totals.size(), by_dim.size()) - 1);
    const auto table = count_table(q, n_max);
    for (std::size_t n = 0; n < totals.size(); ++n, ++checked) {
      const BigCount want(totals[n].get<std::string>());
      notes.check(table.rows[n].total == want, "q=" + std::to_string(q) + " n=" + std::to_string(n) +
                                                   ": " + str(table.rows[n].total) + " != " + str(want));
    }
    // Rows past the listed totals are checked against their row sums.
    for (std::size_t n = totals.size(); n < by_dim.size(); ++n, ++checked) {
      BigCount sum = 0;
      for (const auto& x : by_dim[n]) sum += BigCount(x.get<std::string>());
      notes.check(table.rows[n].total == sum, "q=" + std::to_string(q) + " n=" + std::to_string(n) +
                                                  " row sum: " + str(table.rows[n].total) +
                                                  " != " + str(sum));
    }
  }
  const double s = since(t0);
  time_limit(notes, s, 1.0);
  return {"AC1", "count totals Rs(R,n) for |R| = 9, 64, 625", notes.ok(),
          notes.summary(std::to_string(checked) + " totals equal"), s};
}

inline Result table_cells(const Options& opt) {
  Notes notes;
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  for (const auto& t : opt.tables.at("tables")) {
    const auto q = t.at("q").get<std::uint64_t>();
    const auto& by_dim = t.at("by_dim");
    const auto table = count_table(q, static_cast<std::uint32_t>(by_dim.size() - 1));
    for (std::size_t n = 0; n < by_dim.size(); ++n) {
      notes.check(by_dim[n].size() == n + 1, "q=" + std::to_string(q) + " row " + std::to_string(n) +
                                                 " has " + std::to_string(by_dim[n].size()) + " cells");
      for (std::size_t l = 0; l < by_dim[n].size() && l <= n; ++l, ++checked) {
        const BigCount want(by_dim[n][l].get<std::string>());
        notes.check(table.rows[n].by_dim[l] == want,
                    "q=" + std::to_string(q) + " l=" + std::to_string(l) + " n=" + std::to_string(n) +
                        ": " + str(table.rows[n].by_dim[l]) + " != " + str(want));
      }
    }
  }
  const double s = since(t0);
  time_limit(notes, s, 1.0);
  return {"AC2", "count cells Rs(R,l,n) for |R| = 9, 64, 625", notes.ok(),
          notes.summary(std::to_string(checked) + " cells equal"), s};
}

inline Result brute_vs_formula(const Options& opt) {
  Notes notes;
  const auto t0 = Clock::now();
  const std::vector<std::vector<std::uint64_t>> expected{
      {1, 1}, {1, 10, 1}, {1, 91, 27, 1}, {1, 820, 550, 52, 1}};
  const std::uint32_t n_max = opt.slow ? 4 : 3;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    const auto got = brute_count(nf9(), n, opt.jobs);
    notes.check(got == expected[n - 1], "n=" + std::to_string(n) + " brute count differs");
    for (std::uint32_t l = 0; l <= n && l < got.size(); ++l)
      notes.check(BigCount(got[l]) == count_subgroups(9, l, n),
                  "n=" + std::to_string(n) + " l=" + std::to_string(l) + " formula differs");
  }
  return {"AC3", "brute_count equals the closed formula (order 9)", notes.ok(),
          notes.summary("n = 1.." + std::to_string(n_max) + " match" +
                        (opt.slow ? "" : "; n = 4 needs --slow")),
          since(t0)};
}

inline Result axioms(const Options&) {
  Notes notes;
  const auto t0 = Clock::now();
  auto run = [&](DicksonPair pair, ValidationMode mode) {
    const std::string tag = "(" + std::to_string(pair.q) + "," + std::to_string(pair.n) + ")";
    const Nearfield nf(pair);
    const auto report = validate_axioms(nf, mode);
    for (std::size_t i = 0; i < axiom_count; ++i)
      notes.check(report.passed[i], tag + " " + axiom_name(static_cast<Axiom>(i)));
    notes.check(report.properness_witness.has_value(), tag + " has no properness witness");
  };
  run({3, 2}, ValidationMode::exhaustive());
  run({4, 3}, ValidationMode::exhaustive());
  run({5, 4}, ValidationMode::sampled(1'000'000, 1));
  const double s = since(t0);
  time_limit(notes, s, 60.0);
  return {"AC4", "nearfield axioms: 9, 64 exhaustive; 625 sampled 10^6", notes.ok(),
          notes.summary("all seven checks pass and a properness witness exists for each order"),
          s};
}

inline Result gen_oracle(const Options&) {
  Notes notes;
  const auto t0 = Clock::now();
  const auto& nf = nf9();
  auto agree = [&](std::size_t n, const std::vector<Vector>& vs, const std::string& tag) {
    const auto trace = lc_closure(nf, n, vs);
    const auto gen = enumerate_elements(nf, canonical_gen(nf, n, vs).subgroup);
    notes.check(std::set<Vector>(trace.elements.begin(), trace.elements.end()) ==
                    std::set<Vector>(gen.begin(), gen.end()),
                tag);
  };

  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> pick_n(1, 4), pick_k(1, 3);
  std::uniform_int_distribution<Element> pick(0, 8);
  const int random_cases = 1000;
  for (int i = 0; i < random_cases; ++i) {
    const std::size_t n = pick_n(rng), k = pick_k(rng);
    std::vector<Vector> vs(k, Vector(n));
    for (auto& v : vs)
      for (auto& x : v.coords) x = pick(rng);
    agree(n, vs, "random case " + std::to_string(i));
  }

  const Matrix seed = build_seed_matrix(nf, 2);
  std::vector<Vector> cols{Vector(2)};
  for (std::size_t c = 0; c < seed.front().size(); ++c) cols.push_back(Vector{seed[0][c], seed[1][c]});
  std::size_t pairs = 0;
  for (const auto& a : cols)
    for (const auto& b : cols)
      for (const auto& c : cols) {
        agree(3, {{a[0], b[0], c[0]}, {a[1], b[1], c[1]}}, "normalized pair " + std::to_string(pairs));
        ++pairs;
      }
  return {"AC5", "canonical_gen equals lc_closure", notes.ok(),
          notes.summary(std::to_string(random_cases) + " random + " + std::to_string(pairs) +
                        " normalized pairs agree"),
          since(t0)};
}

inline Result mdim_construction(const Options&) {
  Notes notes;
  const auto t0 = Clock::now();
  const auto& nf = nf9();
  for (std::uint32_t k : {2U, 3U}) {
    const Matrix m = build_seed_matrix(nf, k);
    const auto r = canonical_gen(nf, m.front().size(), m);
    const auto want = static_cast<std::size_t>(mdim(9, k));
    notes.check(r.subgroup.dim() == want, "k=" + std::to_string(k) + " dim " +
                                              std::to_string(r.subgroup.dim()));
    notes.check(r.certificates.empty(), "k=" + std::to_string(k) + " has certificates");
  }
  const Matrix m2 = build_seed_matrix(nf, 2);
  for (Element a = 0; a < 9; ++a)
    for (Element b = 0; b < 9; ++b) {
      Matrix ext = m2;
      ext[0].coords.push_back(a);
      ext[1].coords.push_back(b);
      const auto dim = canonical_gen(nf, 11, ext).subgroup.dim();
      notes.check(dim <= 10, "extra column (" + std::to_string(a) + "," + std::to_string(b) +
                                 ") gives dim " + std::to_string(dim));
    }
  const double s = since(t0);
  time_limit(notes, s, 1.0);
  return {"AC6", "seed matrix reaches mdim 10 (k=2) and 91 (k=3)", notes.ok(),
          notes.summary("dims 10 and 91, no certificates; 81 extensions stay <= 10"), s};
}

inline Result seed_numbers(const Options&) {
  Notes notes;
  const auto t0 = Clock::now();
  const auto& nf = nf9();
  for (std::uint64_t l = 1; l <= 91; ++l) {
    const std::uint32_t want = l == 1 ? 1 : l <= 10 ? 2 : 3;
    notes.check(seed_number(9, l) == want, "seed_number(9, " + std::to_string(l) + ")");
  }
  const std::vector<Vector> rows{{1, 0, 0, 1, 0}, {0, 1, 1, 0, 0}, {0, 0, 0, 0, 1}};
  const auto s = canonical_from_basis(nf, 5, rows);
  const auto seeds = find_seed_set(nf, s);
  notes.check(seeds.size() == 2, "seed set of S has " + std::to_string(seeds.size()) + " vectors");
  notes.check(canonical_gen(nf, 5, seeds).subgroup == s, "seed set does not regenerate S");
  const double secs = since(t0);
  time_limit(notes, secs, 1.0);
  return {"AC7", "seed numbers and find_seed_set on S", notes.ok(),
          notes.summary("seed_number(9, 1..91) correct; S regenerated from 2 vectors"), secs};
}

inline Result linearity_index(const Options& opt) {
  Notes notes;
  const auto t0 = Clock::now();
  const auto& nf = nf9();
  const std::vector<Vector> pair{{1, 0, 1}, {1, 1, 0}};
  const auto trace = lc_closure(nf, 3, pair);
  notes.check(trace.elements.size() == 729, "closure size " + std::to_string(trace.elements.size()));
  notes.check(trace.index == 2, "index " + std::to_string(trace.index));

  SearchOptions so;
  so.jobs = opt.jobs;
  const auto report = search_linearity_index(nf, {1, 3}, {2, 2}, ExhaustiveSearch{}, so);
  notes.check(report.max_index >= 2, "search max index " + std::to_string(report.max_index));
  bool found = false;
  for (const auto& w : report.witnesses) found = found || w == pair;
  notes.check(found || report.max_index > 2, "witness (1,0,1),(1,1,0) missing from search output");
  return {"AC8", "linearity index of (1,0,1),(1,1,0) and exhaustive search", notes.ok(),
          notes.summary("size 729, index 2; search over " + std::to_string(report.instances) +
                        " tuples has max index " + std::to_string(report.max_index) +
                        " with the witness"),
          since(t0)};
}

inline Result double_counting(const Options&) {
  Notes notes;
  const auto t0 = Clock::now();
  struct Case {
    std::uint32_t n, l;
  };
  for (Case c : {Case{1, 1}, Case{2, 1}, Case{2, 2}, Case{3, 2}}) {
    const auto r = double_count_check(nf9(), c.n, c.l);
    std::uint64_t want = 1;
    for (std::uint32_t i = 1; i <= c.l; ++i) want *= 8 * i;
    const std::string tag = "(n,l)=(" + std::to_string(c.n) + "," + std::to_string(c.l) + ")";
    notes.check(r.ok, tag + " group of size " + std::to_string(r.observed_size));
    notes.check(r.expected_group_size == want, tag + " expected size");
    notes.check(BigCount(r.groups) == count_subgroups(9, c.l, c.n), tag + " group count");
  }
  return {"AC9", "double counting: every group has l! 8^l sequences", notes.ok(),
          notes.summary("(1,1), (2,1), (2,2), (3,2) exact"), since(t0)};
}

}  // namespace detail

using Criterion = std::function<Result(const Options&)>;

inline std::vector<Criterion> criteria() {
  return {detail::table_totals,   detail::table_cells,     detail::brute_vs_formula,
          detail::axioms,         detail::gen_oracle,      detail::mdim_construction,
          detail::seed_numbers,   detail::linearity_index, detail::double_counting};
}

inline std::string format(const Result& r) {
  std::ostringstream out;
  out << (r.passed ? "PASS " : "FAIL ") << r.id << "  " << r.title << "  (" << r.detail << ")";
  return out.str();
}

/// Runs every criterion and prints one line each; true when all pass. An
/// exception inside a criterion counts as a failure of that criterion.
inline bool run_all(const Options& opt, std::ostream& out, std::vector<Result>* results = nullptr) {
  bool all = true;
  const auto list = criteria();
  for (std::size_t i = 0; i < list.size(); ++i) {
    Result r;
    try {
      r = list[i](opt);
    } catch (const std::exception& e) {
      r.id = "AC" + std::to_string(i + 1);
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    out << format(r) << std::endl;
    all = all && r.passed;
    if (results) results->push_back(r);
  }
  return all;
}

}  // namespace nearspace::verify
