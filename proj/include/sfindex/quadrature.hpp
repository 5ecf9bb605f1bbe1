#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace sfindex {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// n-point generalized Gauss-Laguerre rule for the weight x^alpha e^{-x} on [0, inf).
QuadratureRule gauss_laguerre(int n, double alpha);

struct QuadResult {
  std::complex<double> value;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod integration on [a, b].
QuadResult integrate_adaptive(const ComplexIntegrand& f, double a, double b, double rel_tol = 1e-10,
                              double abs_tol = 1e-14, int max_intervals = 2000);

/// Fixed rule applied to a complex integrand.
std::complex<double> integrate_fixed(const ComplexIntegrand& f, const QuadratureRule& rule);

}  // namespace sfindex
