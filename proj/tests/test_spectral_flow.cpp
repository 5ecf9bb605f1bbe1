#include <gtest/gtest.h>

#include "sfindex/random.hpp"
#include "sfindex/spectral_flow.hpp"

namespace sfindex {
namespace {

// Eigenvalues t - 0.3 and t - 0.6 enter [0, inf), 0.5 - t leaves it.
OperatorPath diagonal_path() {
  return OperatorPath::sampled(
      [](double t) {
        RVector d(3);
        d << t - 0.3, t - 0.6, 0.5 - t;
        return HermitianOperator::diagonal(d);
      },
      1.0);
}

Matrix projector(const Matrix& v, Index rank) {
  const Matrix b = v.leftCols(rank);
  return b * b.adjoint();
}

TEST(IndexPair, DiagonalProjections) {
  RVector p(4), q(4);
  p << 1, 1, 0, 0;
  q << 1, 0, 0, 0;
  const TraceSpec tau = TraceSpec::uniform(4);
  EXPECT_DOUBLE_EQ(index_pair(p.cast<cplx>().asDiagonal(), q.cast<cplx>().asDiagonal(), 1, tau), -1.0);
}

TEST(IndexPair, IndependentOfPower) {
  Rng rng(41);
  const Matrix p = projector(random_unitary(rng, 6), 2);
  const Matrix q = projector(random_unitary(rng, 6), 3);
  const TraceSpec tau = TraceSpec::uniform(6);
  for (int k = 0; k <= 3; ++k) EXPECT_NEAR(index_pair(p, q, k, tau), 1.0, 1e-10) << k;
}

TEST(Crossings, CountsSignedCrossings) {
  const CrossingReport r = sf_crossings(diagonal_path(), TraceSpec::uniform(3));
  EXPECT_DOUBLE_EQ(r.sf, 1.0);
  ASSERT_EQ(r.crossings.size(), 3u);
  EXPECT_NEAR(r.crossings[0].t, 0.3, 1e-6);
  EXPECT_EQ(r.crossings[0].direction, 1);
  EXPECT_NEAR(r.crossings[1].t, 0.5, 1e-6);
  EXPECT_EQ(r.crossings[1].direction, -1);
}

TEST(Crossings, WeightedTrace) {
  const TraceSpec tau({{1, 1.0}, {1, 2.0}, {1, 0.5}});
  EXPECT_NEAR(sf_crossings(diagonal_path(), tau).sf, 2.5, 1e-12);
}

TEST(Crossings, ReversedPathNegates) {
  const OperatorPath back = diagonal_path().reparametrized([](double t) { return 1.0 - t; }, 1.0);
  EXPECT_DOUBLE_EQ(sf_crossings(back, TraceSpec::uniform(3)).sf, -1.0);
}

TEST(Crossings, ZeroAtEndpointBelongsToRightBracket) {
  // eigenvalue t reaches 0 only at t = 0; zero counts as nonnegative, so no crossing
  const OperatorPath p = OperatorPath::sampled(
      [](double t) {
        RVector d(2);
        d << t, -1.0;
        return HermitianOperator::diagonal(d);
      },
      1.0);
  EXPECT_DOUBLE_EQ(sf_crossings(p, TraceSpec::uniform(2)).sf, 0.0);
}

TEST(Partition, AgreesWithCrossings) {
  const TraceSpec tau({{1, 1.0}, {1, 2.0}, {1, 0.5}});
  const PartitionReport r = sf_partition(diagonal_path(), tau);
  EXPECT_NEAR(r.value, 2.5, 1e-10);
  EXPECT_GE(r.nodes.size(), 2u);
}

TEST(Partition, ConjugationInvariance) {
  Rng rng(42);
  const Matrix v = random_unitary(rng, 3);
  EXPECT_NEAR(sf_partition(diagonal_path().conjugated(v), TraceSpec::uniform(3)).value, 1.0, 1e-10);
  EXPECT_NEAR(sf_crossings(diagonal_path().conjugated(v), TraceSpec::uniform(3)).sf, 1.0, 1e-12);
}

TEST(Breuer, TruncatedIdentity) {
  RVector dp(4), cp(4);
  dp << 1, 1, 1, 0;
  cp << 1, 1, 0, 0;
  const Matrix t = cp.cast<cplx>().asDiagonal();
  const BreuerIndexResult r =
      breuer_index(t, dp.cast<cplx>().asDiagonal(), cp.cast<cplx>().asDiagonal(), TraceSpec::uniform(4));
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_NEAR(r.kernel_trace, 1.0, 1e-12);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Breuer, RejectsNonProjection) {
  const Matrix bad = 0.5 * identity(2);
  EXPECT_THROW(breuer_index(identity(2), bad, identity(2), TraceSpec::uniform(2)), std::domain_error);
}

TEST(Toeplitz, DoubledNeedsPositiveMu) {
  RVector d(2);
  d << -1.0, 1.0;
  ToeplitzIndexOptions o;
  o.doubled = true;
  EXPECT_THROW(toeplitz_index(HermitianOperator::diagonal(d), identity(2), TraceSpec::uniform(2), o),
               std::invalid_argument);
}

}  // namespace
}  // namespace sfindex
