#include <gtest/gtest.h>

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nearspace/counting.hpp"

using namespace nearspace;

namespace {

const Nearfield& nf9() {
  static const Nearfield nf({3, 2});
  return nf;
}

nlohmann::json reference_tables() {
  std::ifstream in(std::string(NEARSPACE_FIXTURE_DIR) + "/reference_tables.json");
  return nlohmann::json::parse(in);
}

// Dowling numbers from the exponential generating function
// exp(x + (e^{bx} - 1)/b):  D(n+1) = D(n) + sum_k C(n,k) b^k D(n-k).
std::vector<BigCount> dowling(std::uint64_t b, std::uint32_t n_max) {
  std::vector<BigCount> d{1};
  for (std::uint32_t n = 0; n < n_max; ++n) {
    BigCount next = d[n];
    for (std::uint32_t k = 0; k <= n; ++k) next += binomial(n, k) * big_pow(b, k) * d[n - k];
    d.push_back(next);
  }
  return d;
}

}  // namespace

TEST(Stirling, SmallValues) {
  EXPECT_EQ(stirling2(0, 0), 1);
  EXPECT_EQ(stirling2(5, 0), 0);
  EXPECT_EQ(stirling2(4, 2), 7);
  EXPECT_EQ(stirling2(6, 3), 90);
  EXPECT_EQ(stirling2(10, 5), 42525);
  EXPECT_EQ(stirling2(3, 4), 0);
  // Row sums are Bell numbers.
  BigCount bell = 0;
  for (std::uint32_t k = 0; k <= 8; ++k) bell += stirling2(8, k);
  EXPECT_EQ(bell, 4140);
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(0, 0), 1);
  EXPECT_EQ(binomial(7, 3), 35);
  EXPECT_EQ(binomial(3, 7), 0);
  EXPECT_EQ(binomial(60, 30), BigCount("118264581564861424"));
}

TEST(CountSubgroups, SpotValues) {
  EXPECT_EQ(count_subgroups(9, 1, 2), 10);
  EXPECT_EQ(count_subgroups(9, 1, 4), 820);
  EXPECT_EQ(count_subgroups(9, 2, 6), 180271);
  EXPECT_EQ(count_subgroups(64, 1, 7), BigCount("69810262081"));
  EXPECT_EQ(count_subgroups(625, 2, 4), 2733126);
  EXPECT_EQ(count_subgroups(625, 3, 6), BigCount("21925818740"));
  EXPECT_EQ(count_subgroups(9, 5, 4), 0);
  EXPECT_THROW((void)count_subgroups(2, 1, 3), std::invalid_argument);
}

TEST(CountSubgroups, Boundaries) {
  for (std::uint64_t q : {3, 9, 64, 625})
    for (std::uint32_t n = 0; n <= 10; ++n) {
      EXPECT_EQ(count_subgroups(q, 0, n), 1);
      EXPECT_EQ(count_subgroups(q, n, n), 1);
      if (n >= 1) {
        EXPECT_EQ(count_subgroups(q, 1, n), (big_pow(q, n) - 1) / (q - 1));
      }
    }
}

TEST(CountAll, Values) {
  EXPECT_EQ(count_all(9, 8), 111259904);
  EXPECT_EQ(count_all(64, 7), BigCount("140823067772"));
  EXPECT_EQ(count_all(625, 6), BigCount("100264147266880"));
  EXPECT_EQ(count_all(625, 7), BigCount("65739252669562496"));
}

TEST(CountTable, ReproducesReferenceTables) {
  const auto ref = reference_tables();
  for (const auto& t : ref["tables"]) {
    const auto q = t["q"].get<std::uint64_t>();
    const auto& by_dim = t["by_dim"];
    const auto& totals = t["totals"];
    const auto n_max = static_cast<std::uint32_t>(std::max(by_dim.size(), totals.size()) - 1);
    const auto table = count_table(q, n_max);
    for (std::size_t n = 0; n < by_dim.size(); ++n)
      for (std::size_t l = 0; l < by_dim[n].size(); ++l)
        EXPECT_EQ(table.rows[n].by_dim[l], BigCount(by_dim[n][l].get<std::string>()))
            << "q=" << q << " n=" << n << " l=" << l;
    for (std::size_t n = 0; n < totals.size(); ++n)
      EXPECT_EQ(table.rows[n].total, BigCount(totals[n].get<std::string>())) << q << " " << n;
  }
}

TEST(CountAll, MatchesDowlingRecurrence) {
  for (std::uint64_t q : {3, 9, 64, 625}) {
    const auto d = dowling(q - 1, 12);
    for (std::uint32_t n = 0; n <= 12; ++n) EXPECT_EQ(count_all(q, n), d[n]) << q << " " << n;
  }
  // The recurrence itself: b = 1 gives Bell numbers, b = 2 the next Dowling row.
  const auto bell = dowling(1, 8);
  EXPECT_EQ(bell, (std::vector<BigCount>{1, 2, 5, 15, 52, 203, 877, 4140, 21147}));
  const auto b2 = dowling(2, 8);
  EXPECT_EQ(b2, (std::vector<BigCount>{1, 2, 6, 24, 116, 648, 4088, 28640, 219920}));
}

TEST(CountAll, MatchesStoredDowlingSequences) {
  std::ifstream in(std::string(NEARSPACE_FIXTURE_DIR) + "/dowling.json");
  const auto fixture = nlohmann::json::parse(in);
  std::size_t checked = 0;
  for (const auto& seq : fixture["sequences"]) {
    const auto b = seq["b"].get<std::uint64_t>();
    const auto d = dowling(b, static_cast<std::uint32_t>(seq["values"].size() - 1));
    for (std::size_t n = 0; n < seq["values"].size(); ++n) {
      const BigCount want(seq["values"][n].get<std::string>());
      EXPECT_EQ(d[n], want) << "b=" << b << " n=" << n;
      if (b >= 2) {
        EXPECT_EQ(count_all(b + 1, static_cast<std::uint32_t>(n)), want) << "b=" << b;
      }
      ++checked;
    }
  }
  EXPECT_EQ(checked, 65u);
}

TEST(CountSubgroups, BelowTheSubsetBound) {
  // A dimension-l subgroup is fixed by a seed set of size seed_number(q, l),
  // so Rs(q, l, n) <= C(q^n, seed_number(q, l)).
  for (std::uint64_t q : {9, 64})
    for (std::uint32_t n = 1; n <= 8; ++n)
      for (std::uint32_t l = 1; l <= n; ++l)
        EXPECT_LE(count_subgroups(q, l, n),
                  binomial(static_cast<std::uint64_t>(big_pow(q, n)), seed_number(q, l)));
}

TEST(BruteCount, MatchesFormulaForSmallN) {
  const std::vector<std::vector<std::uint64_t>> expected{{1, 1}, {1, 10, 1}, {1, 91, 27, 1}};
  for (std::uint32_t n = 1; n <= 3; ++n) {
    const auto got = brute_count(nf9(), n);
    EXPECT_EQ(got, expected[n - 1]);
    for (std::uint32_t l = 0; l <= n; ++l) EXPECT_EQ(BigCount(got[l]), count_subgroups(9, l, n));
  }
}

TEST(BruteCount, JobCountDoesNotChangeResult) {
  EXPECT_EQ(brute_count(nf9(), 2, 1), brute_count(nf9(), 2, 4));
}

TEST(BruteCount, RefusesBeyondBudget) {
  EXPECT_THROW(brute_count(nf9(), 3, 1, 1000), Error);
  EXPECT_THROW(brute_count(nf9(), 11), Error);
}

TEST(DoubleCount, GroupSizesAreExact) {
  struct Case {
    std::uint32_t n, l;
  };
  for (Case c : {Case{1, 1}, Case{2, 1}, Case{2, 2}, Case{3, 2}, Case{3, 0}, Case{3, 3}}) {
    const auto r = double_count_check(nf9(), c.n, c.l);
    EXPECT_TRUE(r.ok) << c.n << "," << c.l;
    std::uint64_t expected = 1;
    for (std::uint32_t i = 1; i <= c.l; ++i) expected *= 8 * i;
    EXPECT_EQ(r.expected_group_size, expected);
    EXPECT_EQ(BigCount(r.groups), count_subgroups(9, c.l, c.n));
    EXPECT_EQ(r.sequences, r.groups * expected);
  }
}

TEST(DoubleCount, RejectsOversizedInput) {
  EXPECT_THROW(double_count_check(nf9(), 17, 1), Error);
  EXPECT_THROW(double_count_check(nf9(), 2, 3), Error);
}
