#include "sfindex/special.hpp"

#include <cmath>
#include <stdexcept>

namespace sfindex {

std::complex<double> lgamma_complex(std::complex<double> z) {
  static const double c[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                              771.32342877765313,   -176.61502916214059,   12.507343278686905,
                              -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // reflection
    const double pi = std::acos(-1.0);
    return std::log(pi) - std::log(std::sin(pi * z)) - lgamma_complex(1.0 - z);
  }
  z -= 1.0;
  std::complex<double> x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + 7.5;
  return 0.5 * std::log(2.0 * std::acos(-1.0)) + (z + 0.5) * std::log(t) - t + std::log(x);
}

std::complex<double> gamma_complex(std::complex<double> z) {
  if (z.imag() == 0.0) return std::tgamma(z.real());
  return std::exp(lgamma_complex(z));
}

double resolvent_line_integral(double s) {
  if (!(s > 1.0)) throw std::domain_error("resolvent_line_integral: requires s > 1");
  return std::sqrt(std::acos(-1.0)) * std::exp(std::lgamma(0.5 * (s - 1.0)) - std::lgamma(0.5 * s));
}

}  // namespace sfindex
