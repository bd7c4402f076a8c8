#include <gtest/gtest.h>

#include "alexlab/exactla.hpp"
#include "oracles.hpp"

using namespace alexlab;

namespace {

oracle::ZMat to_zmat(const IntMatrix& m) {
  oracle::ZMat out(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

IntMatrix random_matrix(std::mt19937_64& g, long lo, long hi) {
  const auto rows = static_cast<std::size_t>(oracle::uniform(g, 1, 5));
  const auto cols = static_cast<std::size_t>(oracle::uniform(g, 1, 5));
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = oracle::uniform(g, lo, hi);
  return m;
}

void expect_snf_valid(const IntMatrix& a) {
  auto r = smith_normal_form(a);
  ASSERT_EQ(r.U * a * r.V, r.D);
  EXPECT_EQ(abs(determinant(r.U)), 1);
  EXPECT_EQ(abs(determinant(r.V)), 1);
  for (std::size_t i = 0; i < r.D.rows(); ++i)
    for (std::size_t j = 0; j < r.D.cols(); ++j) {
      if (i != j) {
        EXPECT_EQ(r.D(i, j), 0);
      }
    }
  auto d = r.diagonal();
  for (const auto& x : d) EXPECT_GE(x, 0);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i + 1] == 0) continue;
    EXPECT_NE(d[i], 0);
    EXPECT_TRUE(mpz_divisible_p(d[i + 1].get_mpz_t(), d[i].get_mpz_t()));
  }
  Integer prod = 1;
  const auto z = to_zmat(a);
  for (std::size_t k = 1; k <= d.size(); ++k) {
    prod *= d[k - 1];
    EXPECT_EQ(prod, oracle::minor_gcd(z, k)) << "k = " << k;
  }
}

}  // namespace

TEST(Snf, IdentityIsFixed) {
  auto r = smith_normal_form(IntMatrix::identity(2));
  EXPECT_EQ(r.U, IntMatrix::identity(2));
  EXPECT_EQ(r.V, IntMatrix::identity(2));
  EXPECT_EQ(r.D, IntMatrix::identity(2));
}

TEST(Snf, TwoByTwoMatchesMinorGcds) {
  IntMatrix a{{2, 4}, {6, 8}};
  auto r = smith_normal_form(a);
  EXPECT_EQ(r.D, (IntMatrix{{2, 0}, {0, 4}}));
  EXPECT_EQ(oracle::minor_gcd(to_zmat(a), 1), 2);
  EXPECT_EQ(oracle::minor_gcd(to_zmat(a), 2), 8);
}

TEST(Snf, ZeroMatrix) {
  IntMatrix z(2, 3);
  auto r = smith_normal_form(z);
  EXPECT_TRUE(r.D.is_zero());
  EXPECT_EQ(r.rank(), 0u);
}

TEST(Snf, EmptyShapes) {
  expect_snf_valid(IntMatrix(1, 3));
  auto r = smith_normal_form(IntMatrix(0, 2));
  EXPECT_EQ(r.V, IntMatrix::identity(2));
  EXPECT_EQ(r.rank(), 0u);
}

TEST(Snf, RandomInstancesSatisfyAllIdentities) {
  auto g = oracle::rng(0x5eed0001);
  for (int i = 0; i < 500; ++i) {
    SCOPED_TRACE(i);
    expect_snf_valid(random_matrix(g, -9, 9));
  }
}

TEST(Snf, DeterministicTransforms) {
  IntMatrix a{{3, 5, 7}, {2, 4, 6}};
  auto r1 = smith_normal_form(a), r2 = smith_normal_form(a);
  EXPECT_EQ(r1.U, r2.U);
  EXPECT_EQ(r1.V, r2.V);
}

TEST(Snf, LargeEntriesStayExact) {
  IntMatrix a(2, 2);
  a(0, 0) = Integer("123456789012345678901234567890");
  a(0, 1) = Integer("987654321098765432109876543210");
  a(1, 0) = 7;
  a(1, 1) = 11;
  expect_snf_valid(a);
}

TEST(Rank, Examples) {
  EXPECT_EQ(integer_rank(IntMatrix{{1, 2}, {2, 4}}), 1u);
  EXPECT_EQ(integer_rank(IntMatrix(0, 3)), 0u);
  EXPECT_EQ(integer_rank(IntMatrix::identity(4)), 4u);
}

TEST(Rank, AgreesWithRationalElimination) {
  auto g = oracle::rng(0x5eed0002);
  for (int i = 0; i < 200; ++i) {
    auto a = random_matrix(g, -2, 2);
    oracle::QMat q(a.rows(), std::vector<Rational>(a.cols()));
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) q[r][c] = a(r, c);
    EXPECT_EQ(integer_rank(a), oracle::rational_rank(q));
    EXPECT_EQ(integer_rank(a), smith_normal_form(a).rank());
  }
}

TEST(Determinant, MatchesLaplace) {
  auto g = oracle::rng(0x5eed0003);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<std::size_t>(oracle::uniform(g, 1, 5));
    IntMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) a(r, c) = oracle::uniform(g, -9, 9);
    EXPECT_EQ(determinant(a), oracle::laplace_det(to_zmat(a)));
  }
}

TEST(Hermite, RowSpaceAndShape) {
  IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  IntMatrix h = hermite_rows(a);
  EXPECT_EQ(Lattice::from_generators(a), Lattice::from_generators(h));
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t lead = 0;
    while (lead < h.cols() && h(i, lead) == 0) ++lead;
    ASSERT_LT(lead, h.cols());
    EXPECT_GT(h(i, lead), 0);
    for (std::size_t k = 0; k < i; ++k) {
      EXPECT_GE(h(k, lead), 0);
      EXPECT_LT(h(k, lead), h(i, lead));
    }
  }
}

TEST(Kernel, LeftKernelAnnihilates) {
  auto g = oracle::rng(0x5eed0004);
  for (int i = 0; i < 100; ++i) {
    auto a = random_matrix(g, -3, 3);
    IntMatrix k = left_kernel(a);
    EXPECT_EQ(k.rows(), a.rows() - integer_rank(a));
    EXPECT_TRUE((k * a).is_zero());
  }
}

TEST(Lattice, SaturationExamples) {
  EXPECT_EQ(saturate(Lattice::from_generators(2, {{2, 0}})), Lattice::from_generators(2, {{1, 0}}));
  EXPECT_EQ(saturate(Lattice::from_generators(2, {{2, 2}})), Lattice::from_generators(2, {{1, 1}}));
  auto full = saturate(Lattice::from_generators(2, {{1, 2}, {3, 4}}));
  EXPECT_EQ(full, Lattice::from_basis(IntMatrix::identity(2)));
  EXPECT_FALSE(is_saturated(Lattice::from_generators(2, {{1, 2}, {3, 4}})));
}

TEST(Lattice, SaturationIsIdempotentAndRankPreserving) {
  auto g = oracle::rng(0x5eed0005);
  for (int i = 0; i < 200; ++i) {
    auto a = random_matrix(g, -6, 6);
    auto l = Lattice::from_generators(a);
    auto s = saturate(l);
    EXPECT_EQ(saturate(s), s);
    EXPECT_EQ(s.rank(), integer_rank(a));
    EXPECT_TRUE(is_saturated(s));
    // l sits inside s.
    EXPECT_EQ(lattice_sum(l, s), s);
  }
}

TEST(Lattice, SumAndIntersection) {
  auto a = Lattice::from_generators(2, {{1, 0}});
  auto b = Lattice::from_generators(2, {{0, 1}});
  EXPECT_EQ(lattice_sum(a, b).rank(), 2u);
  EXPECT_EQ(lattice_intersection(a, b).rank(), 0u);
  auto c = Lattice::from_generators(2, {{2, 0}});
  auto d = Lattice::from_generators(2, {{3, 0}});
  EXPECT_EQ(lattice_intersection(c, d), Lattice::from_generators(2, {{6, 0}}));
  EXPECT_EQ(lattice_sum(c, d), a);
}

TEST(Lattice, IntersectionRankFormula) {
  auto g = oracle::rng(0x5eed0006);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<std::size_t>(oracle::uniform(g, 1, 4));
    auto gen = [&] {
      std::vector<IntVector> rows(static_cast<std::size_t>(oracle::uniform(g, 0, 3)), IntVector(n));
      for (auto& r : rows)
        for (auto& x : r) x = oracle::uniform(g, -3, 3);
      return saturate(Lattice::from_generators(n, rows));
    };
    auto a = gen(), b = gen();
    EXPECT_EQ(a.rank() + b.rank(), lattice_sum(a, b).rank() + lattice_intersection(a, b).rank());
  }
}
