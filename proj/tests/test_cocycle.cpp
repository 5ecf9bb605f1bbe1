#include <gtest/gtest.h>
#include <mpfr.h>

#include <cmath>

#include "sfindex/cocycle.hpp"
#include "sfindex/random.hpp"

namespace sfindex {
namespace {

// 2 sqrt(pi) at 256 bits; sqrt(2i) = 1 + i, so eta_1 = -2 sqrt(pi) (1 + i).
double two_sqrt_pi() {
  mpfr_t v;
  mpfr_init2(v, 256);
  mpfr_const_pi(v, MPFR_RNDN);
  mpfr_sqrt(v, v, MPFR_RNDN);
  mpfr_mul_ui(v, v, 2, MPFR_RNDN);
  const double out = mpfr_get_d(v, MPFR_RNDN);
  mpfr_clear(v);
  return out;
}

TEST(Eta, FirstConstant) {
  const cplx eta = eta_constant(1);
  EXPECT_NEAR(eta.real(), -two_sqrt_pi(), 1e-12);
  EXPECT_NEAR(eta.imag(), -two_sqrt_pi(), 1e-12);
  EXPECT_LT(std::abs(eta + 2.0 * std::sqrt(cplx(0.0, 2.0 * kPi))), 1e-12);
}

TEST(Eta, ThirdConstant) {
  // -(1 + i) 16 Gamma(5/2) / Gamma(4) = -(1 + i) 2 sqrt(pi)
  const cplx eta = eta_constant(3);
  EXPECT_NEAR(eta.real(), -two_sqrt_pi(), 1e-12);
  EXPECT_NEAR(eta.imag(), -two_sqrt_pi(), 1e-12);
}

TEST(DividedDifference, LowOrders) {
  const cplx c(0.7, 0.3);
  auto f = [&](double x) { return std::exp(-c * std::log(x)); };
  EXPECT_LT(std::abs(divided_difference_power({2.0}, c) - f(2.0)), 1e-15);
  EXPECT_LT(std::abs(divided_difference_power({2.0, 3.5}, c) - (f(3.5) - f(2.0)) / 1.5), 1e-14);
  // f[x, x] = f'(x)
  EXPECT_LT(std::abs(divided_difference_power({1.5, 1.5}, c) + c * f(1.5) / 1.5), 1e-14);
  // f[x, x, x] = f''(x) / 2
  EXPECT_LT(std::abs(divided_difference_power({1.5, 1.5, 1.5}, c) - c * (c + 1.0) * f(1.5) / (2.0 * 1.5 * 1.5)),
            1e-14);
}

TEST(DividedDifference, MatchesLagrangeAndIsSymmetric) {
  const cplx c(1.2, -0.4);
  const std::vector<double> nodes{1.1, 4.0, 2.3, 7.5, 3.1};
  const cplx a = divided_difference_power(nodes, c);
  EXPECT_LT(std::abs(a - divided_difference_power_lagrange(nodes, c)), 1e-12 * std::abs(a));
  EXPECT_LT(std::abs(a - divided_difference_power({7.5, 3.1, 1.1, 2.3, 4.0}, c)), 1e-15 * std::abs(a));
  // nearly confluent nodes approach the confluent limit
  const cplx near = divided_difference_power({2.0, 2.0 + 1e-9}, c);
  EXPECT_LT(std::abs(near - divided_difference_power({2.0, 2.0}, c)), 1e-8);
  EXPECT_THROW(divided_difference_power({0.0, 1.0}, c), std::domain_error);
}

TEST(Expectation, CauchyIdentityAtOrderZero) {
  Rng rng(11);
  const HermitianOperator d = random_hermitian(rng, 5);
  const Matrix a0 = random_complex(rng, 5, 5);
  ExpectationParams prm;
  prm.m = 0;
  prm.r = cplx(0.8, 0.2);
  prm.s = 0.6;
  const TraceSpec tau = TraceSpec::uniform(5);
  const cplx c = prm.p / 2.0 + prm.r;
  const Matrix w = apply_spectral_function(
      d, [&](double l) { return std::exp(-c * std::log(1.0 + prm.s * prm.s + l * l)); });
  const cplx expect = trace(a0 * w, tau);
  EXPECT_LT(std::abs(expectation_exact({a0}, d, prm, tau) - expect), 1e-13 * std::abs(expect));
}

TEST(Expectation, IdentityInsertionsGiveDerivatives) {
  // <1, 1>_{1} = tau(f'(1 + s^2 + D^2)) with f = lambda^{-c}
  Rng rng(12);
  const HermitianOperator d = random_hermitian(rng, 4);
  ExpectationParams prm;
  prm.m = 1;
  prm.r = 1.0;
  prm.s = 0.3;
  const cplx c = prm.p / 2.0 + prm.r;
  cplx expect = 0.0;
  for (Index j = 0; j < 4; ++j) {
    const double mu = 1.0 + prm.s * prm.s + d.eigenvalues()(j) * d.eigenvalues()(j);
    expect += -c * std::exp(-(c + 1.0) * std::log(mu));
  }
  const Matrix one = identity(4);
  EXPECT_LT(std::abs(expectation_exact({one, one}, d, prm, TraceSpec::uniform(4)) - expect), 1e-13);
}

TEST(Expectation, ExactMatchesNaiveSum) {
  Rng rng(13);
  for (int m = 0; m <= 3; ++m) {
    const HermitianOperator d = random_hermitian(rng, 4);
    std::vector<Matrix> a;
    for (int k = 0; k <= m; ++k) a.push_back(random_complex(rng, 4, 4));
    ExpectationParams prm;
    prm.m = m;
    prm.r = 0.4;
    prm.s = 0.9;
    const TraceSpec tau({{2, 1.0}, {2, 0.5}});
    const cplx e = expectation_exact(a, d, prm, tau);
    EXPECT_LT(std::abs(e - expectation_naive(a, d, prm, tau)), 1e-10 * std::abs(e)) << m;
  }
}

TEST(Expectation, QuadratureConverges) {
  Rng rng(14);
  const HermitianOperator d = random_hermitian(rng, 4);
  std::vector<Matrix> a{random_complex(rng, 4, 4), random_complex(rng, 4, 4)};
  ExpectationParams prm;
  prm.m = 1;
  prm.r = 1.2;
  prm.s = 0.5;
  const TraceSpec tau = TraceSpec::uniform(4);
  const cplx e = expectation_exact(a, d, prm, tau);
  const double height = 200.0 * (1.0 + prm.s * prm.s + d.norm() * d.norm());
  const QuadResult q = expectation_quadrature(a, d, prm, tau, height, 4000);
  EXPECT_LT(std::abs(q.value - e), 1e-6 * std::abs(e));
}

TEST(Chern, DegreeOneHasTwoTerms) {
  Rng rng(15);
  const Matrix u = random_unitary(rng, 3);
  const ChernChain ch = chern_character(u, 1);
  EXPECT_EQ(ch.degree, 1);
  ASSERT_FALSE(ch.terms.empty());
  for (const auto& t : ch.terms) EXPECT_EQ(t.factors.size(), 2u);
}

TEST(Pairing, TrivialUnitaries) {
  Rng rng(16);
  const HermitianOperator d = random_hermitian(rng, 4);
  const TraceSpec tau = TraceSpec::uniform(4);
  EXPECT_LT(std::abs(pair_with_chern(identity(4), d, 1.0, 1.0, tau).value), 1e-12);
  // a function of D commutes with D, so both Chern chains pair identically
  const Matrix u = apply_spectral_function(d, [](double x) { return std::polar(1.0, 2.0 * x); });
  EXPECT_LT(std::abs(pair_with_chern(u, d, 1.0, 1.0, tau).value), 1e-8);
}

}  // namespace
}  // namespace sfindex
