#include <gtest/gtest.h>

#include <cmath>

#include "sfindex/linalg.hpp"
#include "sfindex/random.hpp"

namespace sfindex {
namespace {

TEST(Linalg, PauliYSpectrum) {
  Matrix y(2, 2);
  y << 0.0, cplx(0, -1), cplx(0, 1), 0.0;
  HermitianOperator h(y);
  EXPECT_NEAR(h.eigenvalues()(0), -1.0, 1e-14);
  EXPECT_NEAR(h.eigenvalues()(1), 1.0, 1e-14);
  const Matrix& v = h.eigenvectors();
  EXPECT_LT(max_abs(v.adjoint() * v - identity(2)), 1e-14);
  EXPECT_LT(max_abs(y * v - v * h.eigenvalues().cast<cplx>().asDiagonal()), 1e-14);
}

TEST(Linalg, RejectsNonHermitian) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW(HermitianOperator{a}, std::invalid_argument);
}

TEST(Linalg, PositiveProjectionKeepsZeroModes) {
  RVector d(4);
  d << -2.0, 0.0, 1e-13, 3.0;
  const Matrix p = positive_spectral_projection(HermitianOperator::diagonal(d));
  EXPECT_EQ(p.diagonal().real().sum(), 3.0);
  EXPECT_EQ(p(0, 0), cplx(0.0));
}

TEST(Linalg, SpectralFunctionMatchesPolynomial) {
  Rng rng(3);
  const HermitianOperator h = random_hermitian(rng, 6);
  const Matrix m = h.matrix();
  const Matrix f = apply_spectral_function(h, [](double x) { return cplx(x * x * x - 2.0 * x); });
  EXPECT_LT(max_abs(f - (m * m * m - 2.0 * m)), 1e-13);
}

TEST(Linalg, BoundedTransformSquare) {
  Rng rng(4);
  const HermitianOperator h = random_hermitian(rng, 5);
  const Matrix f = bounded_transform(h);
  const Matrix m = h.matrix();
  // F^2 (1 + H^2) = H^2
  EXPECT_LT(max_abs(f * f * (identity(5) + m * m) - m * m), 1e-13);
  EXPECT_LT(operator_norm(f), 1.0);
}

TEST(Linalg, Norms) {
  RVector d(3);
  d << -3.0, 1.0, 0.5;
  const Matrix m = d.cast<cplx>().asDiagonal();
  EXPECT_NEAR(operator_norm(m), 3.0, 1e-14);
  EXPECT_NEAR(trace_norm(m), 4.5, 1e-14);
}

TEST(Linalg, WeightedTraceAndProduct) {
  Rng rng(5);
  const Matrix a = random_complex(rng, 5, 5), b = random_complex(rng, 5, 5);
  const TraceSpec tau({{2, 0.5}, {3, 2.0}});
  EXPECT_EQ(tau.dim(), 5);
  EXPECT_DOUBLE_EQ(tau.total_weight(), 7.0);
  const Matrix ab = a * b;
  cplx expect = 0.0;
  for (Index i = 0; i < 5; ++i) expect += (i < 2 ? 0.5 : 2.0) * ab(i, i);
  EXPECT_LT(std::abs(trace(ab, tau) - expect), 1e-13);
  EXPECT_LT(std::abs(trace_product(a, b, tau) - expect), 1e-13);
}

TEST(Linalg, AmpliationPutsBaseInnermost) {
  const TraceSpec tau({{1, 1.0}, {1, 3.0}});
  const RVector w = tau.ampliate(2).weights();
  ASSERT_EQ(w.size(), 4);
  EXPECT_EQ(w(0), 1.0);
  EXPECT_EQ(w(1), 3.0);
  EXPECT_EQ(w(2), 1.0);
  EXPECT_EQ(w(3), 3.0);
}

TEST(Linalg, KronAndCommutators) {
  Matrix x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  EXPECT_LT(max_abs(anticommutator(x, z)), 1e-15);
  EXPECT_LT(max_abs(commutator(x, z) + 2.0 * Matrix(x * z).adjoint()), 1e-15);
  const Matrix k = kron(x, identity(3));
  EXPECT_EQ(k.rows(), 6);
  EXPECT_EQ(k(0, 3), cplx(1.0));
}

TEST(Linalg, TextAndJsonRoundTrip) {
  Rng rng(6);
  const Matrix a = random_complex(rng, 3, 4);
  EXPECT_EQ(matrix_from_text(matrix_to_text(a)), a);
  EXPECT_EQ(matrix_from_json(matrix_to_json(a)), a);
  const TraceSpec tau({{2, 0.25}, {1, 1.0}});
  EXPECT_EQ(trace_spec_from_json(trace_spec_to_json(tau)).weights(), tau.weights());
}

TEST(Random, SeededStreamsRepeat) {
  Rng a(42), b(42);
  for (int i = 0; i < 8; ++i) EXPECT_EQ(a.normal(), b.normal());
  Rng c(9);
  const Matrix u = random_unitary(c, 6);
  EXPECT_LT(max_abs(u.adjoint() * u - identity(6)), 1e-13);
  const Matrix p = random_psd(c, 4);
  EXPECT_GE(eigvals_hermitian(p).minCoeff(), -1e-14);
  EXPECT_NEAR(operator_norm(p), 1.0, 1e-13);
}

}  // namespace
}  // namespace sfindex
