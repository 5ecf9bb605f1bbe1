#include <gtest/gtest.h>

#include <cmath>

#include "sfindex/crossed_product.hpp"
#include "sfindex/spectral_flow.hpp"

namespace sfindex {
namespace {

ModelParams mode_shift(int n, int N) {
  ModelParams p;
  p.N = N;
  p.winding = n;
  p.profile = Profile::Fourier;
  p.amplitude = 0.0;
  return p;
}

double direct_index(const CrossedProductModel& m, const Matrix& u) {
  return toeplitz_index(m.D, u, m.trace_spec()).direct;
}

SymbolFunction cosine_weight(const CrossedProductModel& m) {
  Vector a(m.dim());
  for (Index j = 0; j < m.dim(); ++j) a(j) = 1.0 + 0.3 * std::cos(2.0 * kPi * m.x(j) / m.params.L);
  return SymbolFunction::from_samples(a, m.params.L);
}

TEST(Winding, ExactForFourierModes) {
  const int N = 64;
  const double L = 16.0;
  Vector v(N);
  for (int j = 0; j < N; ++j) v(j) = std::polar(1.0, 2.0 * kPi * 2.0 * (j * L / N) / L);
  const WindingResult w = winding_number(SymbolFunction::from_samples(v, L));
  EXPECT_NEAR(w.value, 2.0, 1e-12);
  EXPECT_NEAR(w.imag_part, 0.0, 1e-12);
  EXPECT_TRUE(w.warnings.empty());
}

TEST(Winding, WarnsNearZero) {
  const int N = 32;
  Vector v(N);
  for (int j = 0; j < N; ++j) v(j) = std::cos(2.0 * kPi * j / N) + 0.5;
  EXPECT_FALSE(winding_number(SymbolFunction::from_samples(v, 1.0)).warnings.empty());
}

TEST(Model, UnderResolvedSymbolIsRejected) {
  ModelParams p;
  p.N = 64;
  p.winding = 3;
  EXPECT_THROW(build_model(p), std::domain_error);
}

TEST(Model, CommutatorMatchesDerivative) {
  ModelParams p;
  p.N = 512;
  const CrossedProductModel m = build_model(p);
  EXPECT_LE(m.derivative_error, 1e-8);
  EXPECT_LE(m.tail, 1e-6);
  EXPECT_NEAR(winding_number(m.symbol).value, 1.0, 1e-8);
}

TEST(Model, WindowGeometry) {
  ModelParams p;
  p.N = 256;
  const CrossedProductModel m = build_model(p);
  EXPECT_EQ(m.window_half(), 96);
  const RVector w = m.trace_spec().weights();
  EXPECT_DOUBLE_EQ(w.sum(), 192.0);
  const auto c = m.window_cutoffs();
  ASSERT_EQ(c.size(), 2u);
  EXPECT_DOUBLE_EQ(c[0], 95.5 / 16.0);
  EXPECT_DOUBLE_EQ(c[1], 96.5 / 16.0);
  EXPECT_DOUBLE_EQ(m.mu, 1.0 / 32.0);
}

TEST(Model, FourierProfileIsSeeded) {
  ModelParams p;
  p.N = 512;
  p.profile = Profile::Fourier;
  p.seed = 5;
  const CrossedProductModel a = build_model(p), b = build_model(p);
  EXPECT_EQ(a.g, b.g);
  p.seed = 6;
  EXPECT_NE(build_model(p).g, a.g);
}

TEST(Index, ModeShiftsAreExact) {
  for (int n = -2; n <= 2; ++n) {
    const CrossedProductModel m = build_model(mode_shift(n, 128));
    EXPECT_NEAR(direct_index(m, m.u), -n, 1e-9) << n;
  }
}

TEST(Index, AdditiveForModeShifts) {
  const CrossedProductModel a = build_model(mode_shift(1, 128)), b = build_model(mode_shift(2, 128));
  EXPECT_NEAR(direct_index(a, a.u * b.u), direct_index(a, a.u) + direct_index(b, b.u), 1e-9);
}

TEST(Index, AdditiveForSmoothProfiles) {
  ModelParams p;
  p.N = 512;
  const CrossedProductModel a = build_model(p);
  p.profile = Profile::Fourier;
  p.seed = 3;
  const CrossedProductModel b = build_model(p);
  const double lhs = direct_index(a, a.u * b.u);
  EXPECT_NEAR(lhs, direct_index(a, a.u) + direct_index(b, b.u), 1e-6);
  EXPECT_NEAR(lhs, -2.0, 1e-6);
}

TEST(Factorization, WithinOnePercentAtCubicDecay) {
  ModelParams p;
  p.N = 512;
  const CrossedProductModel m = build_model(p);
  EXPECT_TRUE(factorization_check(m, cosine_weight(m), 3.0).passed());
  EXPECT_THROW(factorization_check(m, cosine_weight(m), 1.0), std::domain_error);
}

TEST(Factorization, QuadraticDecayDeficitHalvesWithN) {
  // the truncated tail of int (1+t^2)^{-1} dt scales like 1/K
  auto deviation = [](int N) {
    ModelParams p;
    p.N = N;
    const CrossedProductModel m = build_model(p);
    const Report r = factorization_check(m, cosine_weight(m), 2.0);
    return r.metrics.back().value;
  };
  const double ratio = deviation(512) / deviation(256);
  EXPECT_GT(ratio, 0.4);
  EXPECT_LT(ratio, 0.6);
}

TEST(Factorization, QuadraticDecayWithinOnePercentAtLargeN) {
  ModelParams p;
  p.N = 2048;
  const CrossedProductModel m = build_model(p);
  EXPECT_TRUE(factorization_check(m, cosine_weight(m), 2.0).passed());
}

TEST(Residue, TrivialSymbol) {
  ModelParams p;
  p.N = 256;
  const CrossedProductModel m = build_model(p);
  const SymbolFunction one = SymbolFunction::from_samples(Vector::Ones(m.dim()), p.L);
  const Report r = izza_residue_check(m, one);
  EXPECT_TRUE(r.passed());
  for (const auto& mt : r.metrics) EXPECT_NEAR(mt.value, 0.0, 1e-12) << mt.name;
}

}  // namespace
}  // namespace sfindex
