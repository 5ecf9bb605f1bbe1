#include "sfindex/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace sfindex {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double pi = std::acos(-1.0);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = mid - half * x;
    r.nodes[n - 1 - i] = mid + half * x;
    r.weights[i] = r.weights[n - 1 - i] = half * w;
  }
  if (n == 1) {
    r.nodes[0] = mid;
    r.weights[0] = b - a;
  }
  return r;
}

QuadratureRule gauss_laguerre(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: n must be positive");
  if (!(alpha > -1.0)) throw std::invalid_argument("gauss_laguerre: alpha must exceed -1");
  // Golub-Welsch on the Jacobi matrix of the generalized Laguerre polynomials.
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
  for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + alpha + 1.0;
  for (int i = 1; i < n; ++i) sub(i - 1) = std::sqrt(i * (i + alpha));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)), Eigen::ComputeEigenvectors);
  const double mu0 = std::tgamma(alpha + 1.0);
  QuadratureRule r;
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(es.eigenvalues()(i));
    const double v0 = es.eigenvectors()(0, i);
    r.weights.push_back(mu0 * v0 * v0);
  }
  return r;
}

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b;
  std::complex<double> value;
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece kronrod(const ComplexIntegrand& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const std::complex<double> fc = f(c);
  std::complex<double> k = fc * kWgk[7];
  std::complex<double> g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const std::complex<double> s = f(c - dx) + f(c + dx);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace

QuadResult integrate_adaptive(const ComplexIntegrand& f, double a, double b, double rel_tol, double abs_tol,
                              int max_intervals) {
  std::priority_queue<Piece> heap;
  heap.push(kronrod(f, a, b));
  QuadResult res;
  res.evaluations = 15;
  std::complex<double> value = heap.top().value;
  double error = heap.top().error;
  while (error > std::max(abs_tol, rel_tol * std::abs(value)) && static_cast<int>(heap.size()) < max_intervals) {
    const Piece worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    const Piece left = kronrod(f, worst.a, m), right = kronrod(f, m, worst.b);
    heap.push(left);
    heap.push(right);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    res.evaluations += 30;
  }
  // final sum in interval order
  std::vector<Piece> all;
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  value = 0.0;
  error = 0.0;
  for (const Piece& p : all) {
    value += p.value;
    error += p.error;
  }
  res.value = value;
  res.error = error;
  res.converged = error <= std::max(abs_tol, rel_tol * std::abs(value));
  return res;
}

std::complex<double> integrate_fixed(const ComplexIntegrand& f, const QuadratureRule& rule) {
  std::complex<double> s = 0.0;
  for (size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
  return s;
}

}  // namespace sfindex
