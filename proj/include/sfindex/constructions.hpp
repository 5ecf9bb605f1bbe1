#pragma once

#include <vector>

#include "sfindex/linalg.hpp"
#include "sfindex/quadrature.hpp"

namespace sfindex {

/// D_mu = [[D, mu], [mu, -D]] on H (+) H.
struct DoubledTriple {
  Index base_dim = 0;
  double mu = 0.0;
  HermitianOperator D_mu;
  std::vector<Matrix> algebra;  // hat images of the supplied elements

  /// [[a, 0], [0, 0]].
  Matrix hat(const Matrix& a) const;
  /// [[b, 0], [0, c Id]] for a unitized element b with scalar part c.
  Matrix hat_unital(const Matrix& b, cplx scalar_part) const;
};

DoubledTriple double_triple(const HermitianOperator& d, const std::vector<Matrix>& algebra, double mu);

/// The 4-fold ampliation used to turn the odd index problem into a graded one.
/// Operators act on C^2 (x) C^2 (x) H with the base index innermost.
struct CliffordPacket {
  HermitianOperator D;
  Matrix u;
  Matrix q, q_e, Dtilde, Gamma, rho;
  Matrix anti_Dq;  // {Dtilde, q}

  Index base_dim() const { return D.dim(); }
  Index dim() const { return 4 * D.dim(); }
  /// tr_4 (x) tau.
  TraceSpec ampliated(const TraceSpec& tau) const { return tau.ampliate(4); }
};

Matrix pauli(int k);  // k in {1, 2, 3}

CliffordPacket clifford_packet(const HermitianOperator& d, const Matrix& u);

/// (1-t) Dtilde - t q Dtilde q + s q.
HermitianOperator dts(const CliffordPacket& pk, double t, double s);

/// (1/2) tau~(Gamma A).
cplx graded_trace(const CliffordPacket& pk, const Matrix& a, const TraceSpec& tau);

/// alpha q{Dtilde,q} + beta q, with 1_X = beta q_e.
struct TangentElement {
  double alpha = 0.0;
  double beta = 0.0;

  Matrix X(const CliffordPacket& pk) const;
  Matrix one_X(const CliffordPacket& pk) const;
};

/// The point D_{t,s} of the affine plane, as a tangent vector at Dtilde.
inline TangentElement plane_point(double t, double s) { return {-t, s}; }

/// (1 + H^2)^{-a} for complex a.
Matrix resolvent_power(const HermitianOperator& h, cplx a);

/// tau~(X (1+(Dtilde+Y)^2)^{-p/2-r} - 1_X (1+(Dtilde+1_Y)^2)^{-p/2-r}). With
/// graded set the graded trace is used instead of tau~.
cplx one_form(const CliffordPacket& pk, const TangentElement& x, const TangentElement& y, cplx r, double p,
              const TraceSpec& tau, bool graded = false);

enum class DerivativeMethod { FiniteDifference, Duhamel };

struct DerivativeOptions {
  int laguerre_nodes = 48;
  double fd_step = 0.0;  // 0 selects 1e-4 (1 + ||Dtilde||)
  bool graded = false;   // graded trace in place of tau~ for the scalar forms
};

/// d/dt|_0 [Y (1+(Dtilde+tX)^2)^{-p/2-r} - 1_Y (1+(Dtilde+t 1_X)^2)^{-p/2-r}] as an operator.
Matrix one_form_derivative_operator(const CliffordPacket& pk, const TangentElement& x, const TangentElement& y,
                                    cplx r, double p, DerivativeMethod method, const DerivativeOptions& opts = {});

/// Closed form of the Duhamel derivative: first divided differences of
/// (1+v)^{-p/2-r} on the spectrum of Dtilde^2.
Matrix one_form_derivative_operator_exact(const CliffordPacket& pk, const TangentElement& x, const TangentElement& y,
                                          cplx r, double p);

/// Trace of one_form_derivative_operator.
cplx one_form_derivative(const CliffordPacket& pk, const TangentElement& x, const TangentElement& y, cplx r,
                         double p, const TraceSpec& tau, DerivativeMethod method, const DerivativeOptions& opts = {});

cplx one_form_derivative_exact(const CliffordPacket& pk, const TangentElement& x, const TangentElement& y, cplx r,
                               double p, const TraceSpec& tau, bool graded = false);

struct HorizontalSides {
  cplx at_t1;  // integral along t = 1
  cplx at_t0;  // integral along t = 0
  double scale;
};

/// Both s-integrals over [0, s0] of the graded one-form along the vertical
/// edges t = 1 and t = 0, with a Gauss-Legendre rule of the given size.
HorizontalSides horizontal_sides(const CliffordPacket& pk, cplx r, double p, double s0, const TraceSpec& tau,
                                 int nodes);

struct RectangleCirculation {
  cplx bottom, right, top, left;  // oriented counterclockwise in (t, s)
  cplx total() const { return bottom + right + top + left; }
  double scale() const;
};

RectangleCirculation stokes_rectangle(const CliffordPacket& pk, cplx r, double p, double s0, const TraceSpec& tau,
                                      int nodes_per_edge, bool graded = true);

/// Graded trace of dDtilde_t/dt (1+Dtilde_t^2)^{-p/2-r} together with the
/// two base-level traces it splits into.
struct MainsSample {
  double t;
  cplx graded;
  cplx first;   // tau(u*[D,u] (1+(D+t u*[D,u])^2)^{-a})
  cplx second;  // tau(u[D,u*] (1+(D+t u[D,u*])^2)^{-a})
};
MainsSample mains_sample(const CliffordPacket& pk, double t, cplx r, double p, const TraceSpec& tau);

/// int_0^1 ||dDtilde_{t,s}/dt (1+Dtilde_{t,s}^2)^{-p/2-r}||_1 dt.
double vertical_decay_norm(const CliffordPacket& pk, double s, cplx r, double p, int nodes);

}  // namespace sfindex
