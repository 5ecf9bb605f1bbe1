#include "sfindex/random.hpp"

#include <cmath>

namespace sfindex {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * kPi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * kPi * u2);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return cplx(re, im) / std::sqrt(2.0);
}

Matrix random_complex(Rng& rng, Index rows, Index cols) {
  Matrix m(rows, cols);
  // fill row by row so the stream order is independent of storage order
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

HermitianOperator random_hermitian(Rng& rng, Index n) {
  const Matrix g = random_complex(rng, n, n);
  Matrix h = 0.5 * (g + g.adjoint());
  const RVector ev = eigvals_hermitian(h);
  const double radius = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
  if (radius > 0) h /= radius;
  return HermitianOperator(h);
}

Matrix random_unitary(Rng& rng, Index n, double spread) {
  const HermitianOperator h = random_hermitian(rng, n);
  return apply_spectral_function(h, [spread](double x) { return std::exp(kI * (spread * x)); });
}

Matrix random_psd(Rng& rng, Index n) {
  const Matrix g = random_complex(rng, n, n);
  Matrix p = g * g.adjoint();
  p /= operator_norm(p);
  return 0.5 * (p + p.adjoint());
}

}  // namespace sfindex
