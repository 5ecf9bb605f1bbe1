#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "sfindex/linalg.hpp"
#include "sfindex/quadrature.hpp"

namespace sfindex {

/// eta_m = -sqrt(2i) 2^{m+1} Gamma(m/2+1) / Gamma(m+1), m odd.
cplx eta_constant(int m);

/// Divided difference of lambda^{-c} (principal branch) on real positive
/// nodes, confluent nodes allowed. Symmetric in its arguments.
cplx divided_difference_power(std::vector<double> nodes, cplx c);

/// Same quantity from the explicit Lagrange form in extended precision.
/// Nodes must be pairwise distinct; used as a cross-check.
cplx divided_difference_power_lagrange(const std::vector<double>& nodes, cplx c);

struct ExpectationParams {
  int m = 0;
  cplx r = 1.0;
  double s = 0.0;
  double p = 1.0;
  double a = 0.25;                // abscissa of the vertical contour, in (0, 1/2)
  std::optional<Matrix> grading;  // gamma; identity when absent
};

/// E_{j0 jm} = sum over j1..j_{m-1} of L1_{j0 j1} ... Lm_{j_{m-1} jm}
/// f[n0_{j0}, ..., nm_{jm}] with f = lambda^{-c}. links.size() == nodes.size() - 1.
Matrix divided_difference_chain(const std::vector<Matrix>& links, const std::vector<RVector>& nodes, cplx c);

/// (1/2 pi i) tau(gamma int_l lambda^{-p/2-r} A0 R_s A1 R_s ... Am R_s dlambda), in closed form.
cplx expectation_exact(const std::vector<Matrix>& A, const HermitianOperator& d, const ExpectationParams& params,
                       const TraceSpec& tau);

/// Plain tuple sum; Lagrange-form divided differences where the poles are
/// distinct, the confluent recursion otherwise.
cplx expectation_naive(const std::vector<Matrix>& A, const HermitianOperator& d, const ExpectationParams& params,
                       const TraceSpec& tau);

/// Numerical line integral over |Im lambda| <= height, trapezoidal in the
/// variable w with Im lambda = sinh w, plus the exact contribution of the
/// leading large-|lambda| expansion beyond the truncation height.
QuadResult expectation_quadrature(const std::vector<Matrix>& A, const HermitianOperator& d,
                                  const ExpectationParams& params, const TraceSpec& tau, double height, int nodes,
                                  bool tail_correction = true);

/// Elementary-tensor chain sum_k c_k a^k_0 (x) ... (x) a^k_m.
struct ChernChain {
  int degree = 1;
  struct Term {
    cplx coefficient;
    std::vector<Matrix> factors;
  };
  std::vector<Term> terms;

  nlohmann::json to_json() const;
};

/// Ch_{2j+1}(u) for u viewed as an n x n matrix with (dim/n) x (dim/n) blocks.
ChernChain chern_character(const Matrix& u, int m, Index n_blocks = 1);

struct CocycleQuadrature {
  int initial_nodes = 128;
  int max_nodes = 2048;
  double rel_tol = 1e-8;
};

struct CocycleValue {
  cplx value;
  double error = 0.0;
  int nodes = 0;
  bool converged = false;
};

/// eta_m int_0^inf s^m <a0, [D,a1], ..., [D,am]>_{m,r,s} ds.
CocycleValue phi_m_r(const std::vector<Matrix>& a, const HermitianOperator& d, cplx r, double p,
                     const TraceSpec& tau, const CocycleQuadrature& quad = {});
CocycleValue phi_m_r(const ChernChain& chain, const HermitianOperator& d, cplx r, double p, const TraceSpec& tau,
                     const CocycleQuadrature& quad = {});

/// (-1/sqrt(2 pi i)) (1/2) sum_{m odd <= M} phi_m^r(Ch_m(u) - Ch_m(u*)), M = 2 floor(p/2) + 1.
CocycleValue pair_with_chern(const Matrix& u, const HermitianOperator& d, double p, cplx r, const TraceSpec& tau,
                             const CocycleQuadrature& quad = {});

/// Pieces of the finite resolvent expansion of q (1 + H^2 + s^2 + s B)^{-a},
/// B = {H, q}, with H the operator supplied and a = p/2 + r.
struct ResolventExpansion {
  std::vector<Matrix> terms;  // s^m (1/2 pi i) int lambda^{-a} q (R B)^m R, m = 0..M
  Matrix remainder;
  Matrix target;
  Matrix sum() const;
};

ResolventExpansion resolvent_expansion(const HermitianOperator& h, const Matrix& q, double s, cplx r, double p,
                                       int order);

}  // namespace sfindex
