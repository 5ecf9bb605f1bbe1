#pragma once

#include <utility>
#include <vector>

#include "sfindex/linalg.hpp"
#include "sfindex/report.hpp"

namespace sfindex {

/// (1 + D^2)^w for complex w.
Matrix bracket_power(const HermitianOperator& d, cplx w);

/// tau((1+D^2)^{-s/4} T (1+D^2)^{-s/4}) for positive semidefinite T.
double phi_s_weight(const HermitianOperator& d, const Matrix& t, double s, const TraceSpec& tau);

/// [(1+D^2)^{1/2}, T].
Matrix delta_map(const HermitianOperator& d, const Matrix& t);
/// L(T) = (1+D^2)^{-1/2}[D^2, T] and R(T) = [D^2, T](1+D^2)^{-1/2}.
std::pair<Matrix, Matrix> lr_maps(const HermitianOperator& d, const Matrix& t);
/// (1+D^2)^{z/2} T (1+D^2)^{-z/2}.
Matrix sigma_z(const HermitianOperator& d, const Matrix& t, cplx z);

/// (||T||^2 + phi_{p+1/n}(|T|^2) + phi_{p+1/n}(|T*|^2))^{1/2}.
double qn_seminorm(const HermitianOperator& d, const Matrix& t, int n, double p, const TraceSpec& tau);

struct PerturbationBoundOptions {
  double trend_tol = 1e-9;  // allowed relative growth from the smallest to the largest s
};

/// Sampled norms of (1+D^2)^rho (1+(D+B)^2)^{-rho} (and the reversed
/// product) and of (1+D^2)^rho (1+D^2+sB+s^2)^{-rho} for s >= 2||B||. For
/// 0 < rho <= 1 the latter is checked against the ceiling 4^rho.
Report perturbation_bound_report(const HermitianOperator& d, const HermitianOperator& b,
                                 const std::vector<double>& s_samples, const std::vector<double>& rho_samples,
                                 const PerturbationBoundOptions& opts = {});

/// Two-sided comparison of phi_s built from D and from D+B with the
/// computed constants ||(1+D_B^2)^{-s/4}(1+D^2)^{s/4}||^2 and its mirror.
Report affine_weight_equivalence(const HermitianOperator& d, const HermitianOperator& b, const Matrix& t,
                                 const std::vector<double>& s_values, const TraceSpec& tau);

}  // namespace sfindex
