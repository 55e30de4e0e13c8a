#include <gtest/gtest.h>

#include <random>
#include <set>

#include "nearspace/genclose.hpp"

using namespace nearspace;

namespace {

const Nearfield& nf9() {
  static const Nearfield nf({3, 2});
  return nf;
}

// Random tuples of vectors. Coordinates are biased towards 0 and 1 so that
// small subgroups and left-multiple columns actually show up.
class TupleGen {
 public:
  explicit TupleGen(std::uint64_t seed, Element order = 9) : rng_(seed), order_(order) {}

  Element element() {
    switch (std::uniform_int_distribution<int>(0, 3)(rng_)) {
      case 0: return 0;
      case 1: return 1;
      default: return std::uniform_int_distribution<Element>(0, order_ - 1)(rng_);
    }
  }

  Vector vector(std::size_t n) {
    Vector v(n);
    for (auto& x : v.coords) x = element();
    return v;
  }

  std::vector<Vector> tuple(std::size_t n, std::size_t k) {
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < k; ++i) vs.push_back(vector(n));
    return vs;
  }

  std::size_t between(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

 private:
  std::mt19937_64 rng_;
  Element order_;
};

std::set<Vector> element_set(const CanonicalSubgroup& t) {
  auto v = enumerate_elements(nf9(), t);
  return {v.begin(), v.end()};
}

}  // namespace

TEST(Properties, CanonicalGenEqualsClosureOnRandomTuples) {
  const auto& nf = nf9();
  TupleGen gen(20240601);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = gen.between(1, 4);
    const auto vs = gen.tuple(n, gen.between(1, 3));
    const auto trace = lc_closure(nf, n, vs);
    const auto closed = std::set<Vector>(trace.elements.begin(), trace.elements.end());
    ASSERT_EQ(closed, element_set(canonical_gen(nf, n, vs).subgroup)) << "trial " << trial;
  }
}

TEST(Properties, CanonicalGenEqualsClosureOnNormalizedPairsInRThree) {
  const auto& nf = nf9();
  const Matrix seed = build_seed_matrix(nf, 2);
  std::vector<Vector> columns{Vector(2)};
  for (std::size_t c = 0; c < seed.front().size(); ++c) columns.push_back(Vector{seed[0][c], seed[1][c]});
  for (const auto& c0 : columns)
    for (const auto& c1 : columns)
      for (const auto& c2 : columns) {
        std::vector<Vector> vs{{c0[0], c1[0], c2[0]}, {c0[1], c1[1], c2[1]}};
        const auto trace = lc_closure(nf, 3, vs);
        ASSERT_EQ(std::set<Vector>(trace.elements.begin(), trace.elements.end()),
                  element_set(canonical_gen(nf, 3, vs).subgroup));
      }
}

TEST(Properties, GeneratorsBelongToTheirSubgroup) {
  const auto& nf = nf9();
  TupleGen gen(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = gen.between(1, 8);
    const auto vs = gen.tuple(n, gen.between(0, 4));
    const auto t = canonical_gen(nf, n, vs).subgroup;
    EXPECT_EQ(t.invariant_violation(9), "");
    for (const auto& v : vs) EXPECT_TRUE(contains(nf, t, v));
  }
}

TEST(Properties, AddingAVectorNeverShrinksTheSubgroup) {
  const auto& nf = nf9();
  TupleGen gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = gen.between(1, 8);
    auto vs = gen.tuple(n, gen.between(0, 3));
    const auto small = canonical_gen(nf, n, vs).subgroup;
    vs.push_back(gen.vector(n));
    const auto big = canonical_gen(nf, n, vs).subgroup;
    EXPECT_GE(big.dim(), small.dim());
    for (std::size_t i = 0; i < small.dim(); ++i) EXPECT_TRUE(contains(nf, big, small.basis_vector(i)));
  }
}

TEST(Properties, GenIsIdempotentOnItsBasis) {
  const auto& nf = nf9();
  TupleGen gen(13);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = gen.between(1, 8);
    const auto t = canonical_gen(nf, n, gen.tuple(n, gen.between(1, 3))).subgroup;
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < t.dim(); ++i) basis.push_back(t.basis_vector(i));
    EXPECT_EQ(canonical_gen(nf, n, basis).subgroup, t);
    EXPECT_EQ(canonical_from_basis(nf, n, basis), t);
  }
}

TEST(Properties, SubgroupsAreClosedUnderTheOperations) {
  const auto& nf = nf9();
  TupleGen gen(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = gen.between(1, 6);
    const auto t = canonical_gen(nf, n, gen.tuple(n, gen.between(1, 3))).subgroup;
    std::vector<Vector> members;
    for (int i = 0; i < 4; ++i) {
      Vector w(t.dim());
      for (auto& x : w.coords) x = gen.element();
      members.push_back(phi_inverse(nf, t, w));
    }
    for (const auto& a : members)
      for (const auto& b : members) {
        EXPECT_TRUE(contains(nf, t, vec_add(nf, a, b)));
        EXPECT_TRUE(contains(nf, t, scalar_act(nf, a, gen.element())));
      }
  }
}

TEST(Properties, PhiIsAnIsomorphismOnRandomSubgroups) {
  const auto& nf = nf9();
  TupleGen gen(19);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = gen.between(1, 8);
    const auto t = canonical_gen(nf, n, gen.tuple(n, gen.between(1, 3))).subgroup;
    Vector w1(t.dim()), w2(t.dim());
    for (auto& x : w1.coords) x = gen.element();
    for (auto& x : w2.coords) x = gen.element();
    const Vector a = phi_inverse(nf, t, w1), b = phi_inverse(nf, t, w2);
    EXPECT_EQ(phi(nf, t, a), w1);
    EXPECT_EQ(phi(nf, t, vec_add(nf, a, b)), vec_add(nf, w1, w2));
    const Element r = gen.element();
    EXPECT_EQ(phi(nf, t, scalar_act(nf, a, r)), scalar_act(nf, w1, r));
  }
}

TEST(Properties, CanonicalFormIsACompleteInvariant) {
  const auto& nf = nf9();
  TupleGen gen(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = gen.between(1, 3);
    const auto t = canonical_gen(nf, n, gen.tuple(n, gen.between(1, 2))).subgroup;
    const auto u = canonical_gen(nf, n, gen.tuple(n, gen.between(1, 2))).subgroup;
    EXPECT_EQ(t == u, element_set(t) == element_set(u));
  }
  // Different generators of the same subgroup land on the same canonical form.
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = gen.between(1, 6);
    const auto t = canonical_gen(nf, n, gen.tuple(n, 2)).subgroup;
    EXPECT_EQ(canonical_gen(nf, n, find_seed_set(nf, t)).subgroup, t);
  }
}

TEST(Properties, SeedSetsHaveMinimalSize) {
  const auto& nf = nf9();
  TupleGen gen(29);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = gen.between(1, 12);
    const auto t = canonical_gen(nf, n, gen.tuple(n, gen.between(0, 4))).subgroup;
    const auto seeds = find_seed_set(nf, t);
    EXPECT_EQ(seeds.size(), seed_number(9, t.dim()));
    // No tuple smaller than mdim allows can reach this dimension.
    if (!seeds.empty()) {
      EXPECT_LT(mdim(9, static_cast<std::uint32_t>(seeds.size() - 1)), t.dim());
    }
  }
}

TEST(Properties, DimensionNeverExceedsMdim) {
  const auto& nf = nf9();
  TupleGen gen(31);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = gen.between(1, 14);
    const std::size_t k = gen.between(1, 3);
    const auto t = canonical_gen(nf, n, gen.tuple(n, k)).subgroup;
    EXPECT_LE(t.dim(), mdim(9, static_cast<std::uint32_t>(k)));
  }
}

TEST(Properties, SearchReportsAreSelfConsistent) {
  const auto& nf = nf9();
  const auto report = search_linearity_index(nf, {1, 3}, {1, 3}, RandomSearch{600, 5});
  std::uint64_t total = report.skipped;
  for (auto [idx, c] : report.counts) {
    total += c;
    EXPECT_LE(idx, report.max_index);
  }
  EXPECT_EQ(total, report.instances);
  EXPECT_EQ(report.counts.at(report.max_index), report.witnesses.size());
  for (const auto& w : report.witnesses)
    EXPECT_EQ(lc_closure(nf, w.front().size(), w).index, report.max_index);
}
