#pragma once

#include <complex>

namespace sfindex {

/// log Gamma(z) on the principal branch, Re z > 0 (Lanczos, g = 7).
std::complex<double> lgamma_complex(std::complex<double> z);
std::complex<double> gamma_complex(std::complex<double> z);

/// int_R (1 + t^2)^{-s/2} dt = sqrt(pi) Gamma((s-1)/2) / Gamma(s/2), s > 1.
double resolvent_line_integral(double s);

}  // namespace sfindex
