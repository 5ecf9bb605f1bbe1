#include <gtest/gtest.h>
#include <mpfr.h>

#include <cmath>

#include "sfindex/linalg.hpp"
#include "sfindex/quadrature.hpp"
#include "sfindex/residue.hpp"
#include "sfindex/special.hpp"

namespace sfindex {
namespace {

double mpfr_lgamma_ref(double x) {
  mpfr_t v;
  mpfr_init2(v, 256);
  mpfr_set_d(v, x, MPFR_RNDN);
  mpfr_lngamma(v, v, MPFR_RNDN);
  const double out = mpfr_get_d(v, MPFR_RNDN);
  mpfr_clear(v);
  return out;
}

TEST(Quadrature, LegendreIsExactForPolynomials) {
  const QuadratureRule r = gauss_legendre(6, 0.0, 2.0);
  double acc = 0.0;
  for (size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * std::pow(r.nodes[i], 11);
  EXPECT_NEAR(acc, std::pow(2.0, 12) / 12.0, 1e-10);
}

TEST(Quadrature, LaguerreMoments) {
  const double alpha = 0.7;
  const QuadratureRule r = gauss_laguerre(20, alpha);
  double acc = 0.0;
  for (size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * r.nodes[i] * r.nodes[i];
  EXPECT_NEAR(acc, std::tgamma(alpha + 3.0), 1e-11);
}

TEST(Quadrature, AdaptiveOscillatory) {
  const QuadResult q = integrate_adaptive([](double x) { return std::exp(cplx(0.0, 5.0 * x)); }, 0.0, 3.0, 1e-12);
  const cplx exact = (std::exp(cplx(0.0, 15.0)) - 1.0) / cplx(0.0, 5.0);
  EXPECT_TRUE(q.converged);
  EXPECT_LT(std::abs(q.value - exact), 1e-11);
}

TEST(Special, LogGammaAgainstMpfr) {
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.25, 30.0})
    EXPECT_NEAR(lgamma_complex(x).real(), mpfr_lgamma_ref(x), 1e-13 * std::max(1.0, std::abs(mpfr_lgamma_ref(x))))
        << x;
}

TEST(Special, GammaRecurrenceOffAxis) {
  const cplx z(0.8, 1.7);
  EXPECT_LT(std::abs(gamma_complex(z + 1.0) - z * gamma_complex(z)), 1e-13 * std::abs(gamma_complex(z + 1.0)));
  EXPECT_LT(std::abs(gamma_complex(std::conj(z)) - std::conj(gamma_complex(z))), 1e-14);
}

TEST(Special, ResolventLineIntegral) {
  EXPECT_NEAR(resolvent_line_integral(2.0), kPi, 1e-13);
  EXPECT_NEAR(resolvent_line_integral(3.0), 2.0, 1e-13);
  EXPECT_THROW(resolvent_line_integral(1.0), std::domain_error);
}

TEST(Residue, RecoversPlantedPole) {
  std::vector<double> w = log_spaced(0.05, 0.5, 8), f;
  for (double x : w) f.push_back(-3.0 / x + 0.5 - 0.2 * x);
  const ResidueFit fit = residue_extrapolate(w, f, {});
  EXPECT_NEAR(fit.residue, -3.0, 1e-12);
  EXPECT_NEAR(fit.coefficients[1], 0.5, 1e-10);
}

TEST(Residue, ScalarLineIntegral) {
  // (s - 1) int (1 + t^2)^{-s/2} dt -> 2 as s -> 1
  const std::vector<double> w = log_spaced(0.05, 0.5, 8);
  std::vector<double> f;
  for (double x : w) f.push_back(resolvent_line_integral(1.0 + x));
  ResidueOptions opts;
  opts.fit_degree = 3;
  EXPECT_NEAR(residue_extrapolate(w, f, opts).residue, 2.0, 1e-4);
}

TEST(Residue, RejectsBadInput) {
  EXPECT_THROW(residue_extrapolate({0.1, 0.2}, {1.0, 2.0}, {}), std::invalid_argument);
  EXPECT_THROW(residue_extrapolate({-0.1, 0.2, 0.3, 0.4}, {1, 2, 3, 4}, {}), std::domain_error);
  const auto g = log_spaced(0.05, 0.5, 3);
  EXPECT_NEAR(g[1], std::sqrt(0.05 * 0.5), 1e-15);
}

}  // namespace
}  // namespace sfindex
