#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfindex/linalg.hpp"
#include "sfindex/report.hpp"
#include "sfindex/residue.hpp"

namespace sfindex {

enum class Profile { Smoothstep, Fourier };

Profile profile_from_name(const std::string& name);
std::string profile_name(Profile p);

struct ModelParams {
  int N = 1024;
  double L = 16.0;
  int winding = 1;
  Profile profile = Profile::Smoothstep;
  double sigma = 0.5;      // Gaussian filter width of the Fourier profile, in x units
  double amplitude = 0.15; // size of the random periodic part of the Fourier profile
  std::uint64_t seed = 1;
  double mu = 0.0;         // doubling parameter; 0 selects 1/(2L)
  double window = 0.375;   // trace window |k| < window * N in momentum index
  double tail_limit = 1e-6;
};

/// Periodic samples of a function on the model grid with its spectral derivative.
struct SymbolFunction {
  Vector values;
  Vector derivative;
  double L = 1.0;

  /// Derivative by spectral differentiation of the samples.
  static SymbolFunction from_samples(const Vector& values, double L);
  Index size() const { return values.size(); }
  double step() const { return L / static_cast<double>(values.size()); }
};

/// Discretized translation model on the circle of length L: D = diag(k/L) in the
/// Fourier basis, u the multiplication operator by exp(2 pi i g).
struct CrossedProductModel {
  ModelParams params;
  RVector x;                // grid points j L / N
  Eigen::VectorXi k;        // momenta -N/2 .. N/2-1
  RVector g, g_prime;       // winding profile and its exact derivative
  SymbolFunction symbol;    // u = exp(2 pi i g) on the grid
  HermitianOperator D;
  Matrix u;
  double tau_const = 1.0;
  double mu = 0.0;
  double tail = 0.0;            // relative high-frequency mass of the symbol
  double derivative_error = 0.0;  // windowed ||[D,u] - (1/2 pi i) u'||

  Index dim() const { return params.N; }
  /// F diag(a) F^dagger for grid samples a.
  Matrix multiplication(const Vector& a) const;
  /// Window of momenta carrying the calibrated trace.
  TraceSpec trace_spec() const;
  /// Calibrated trace over every mode.
  TraceSpec full_trace_spec() const;
  /// Momentum cutoffs of the trace window, in frequency units (upper and lower edge).
  std::vector<double> window_cutoffs() const;
  Index window_half() const;
};

CrossedProductModel build_model(const ModelParams& params);

struct WindingResult {
  double value = 0.0;
  double imag_part = 0.0;
  std::vector<std::string> warnings;
};

/// (1/2 pi i) int u* u' dx by the trapezoid rule; tau_normalization multiplies the integral.
WindingResult winding_number(const SymbolFunction& u, double tau_normalization = 1.0);

/// tau_const times the matrix trace.
cplx calibrated_trace(const CrossedProductModel& model, const Matrix& t);

/// tau(pi(a) (1+D^2)^{-s/2}) against tau(a) int (1+t^2)^{-s/2} dt.
Report factorization_check(const CrossedProductModel& model, const SymbolFunction& a, double s,
                           double tol = 0.01);

struct IzzaOptions {
  std::vector<double> s_grid{1.05, 1.1, 1.2, 1.4, 1.8};
  int fit_degree = 3;
  double tol = 0.02;
};

/// Residue at s = 1 of (1/2) tau(e^{-1}[D,e](1+D^2)^{-s/2}) against (1/2 pi i) tau(e^{-1} e').
Report izza_residue_check(const CrossedProductModel& model, const SymbolFunction& e, const IzzaOptions& opts = {});

struct PrExperimentOptions {
  std::vector<double> z_grid;  // empty selects 8 log-spaced points in [0.05, 0.5]
  int t_nodes = 24;
  int fit_degree = 2;
  int sf_grid = 16;
  double integral_tol = 0.1;
  bool run_crossings = true;
  bool run_integral = true;
};

/// Winding number, pair index, crossing count, residue of the integral formula
/// and the doubled-route index on one model instance.
Report pr_index_experiment(const CrossedProductModel& model, const PrExperimentOptions& opts = {});

/// Residue of F(z) samples with the window-aware pole model.
ResidueFit integral_residue(const CrossedProductModel& model, const std::vector<double>& z,
                            const std::vector<double>& f, int fit_degree);

}  // namespace sfindex
