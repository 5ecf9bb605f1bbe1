#include "sfindex/constructions.hpp"

#include <cmath>
#include <stdexcept>

#include "sfindex/special.hpp"

namespace sfindex {

Matrix DoubledTriple::hat(const Matrix& a) const {
  if (a.rows() != base_dim || a.cols() != base_dim) throw std::invalid_argument("hat: dimension mismatch");
  Matrix out = Matrix::Zero(2 * base_dim, 2 * base_dim);
  out.topLeftCorner(base_dim, base_dim) = a;
  return out;
}

Matrix DoubledTriple::hat_unital(const Matrix& b, cplx scalar_part) const {
  Matrix out = hat(b);
  out.bottomRightCorner(base_dim, base_dim) = scalar_part * identity(base_dim);
  return out;
}

DoubledTriple double_triple(const HermitianOperator& d, const std::vector<Matrix>& algebra, double mu) {
  if (!(mu > 0)) throw std::invalid_argument("double_triple: mu must be positive");
  const Index n = d.dim();
  Matrix dm(2 * n, 2 * n);
  dm.topLeftCorner(n, n) = d.matrix();
  dm.topRightCorner(n, n) = mu * identity(n);
  dm.bottomLeftCorner(n, n) = mu * identity(n);
  dm.bottomRightCorner(n, n) = -d.matrix();
  DoubledTriple out;
  out.base_dim = n;
  out.mu = mu;
  out.D_mu = HermitianOperator(dm);
  for (const Matrix& a : algebra) out.algebra.push_back(out.hat(a));
  return out;
}

Matrix pauli(int k) {
  Matrix s(2, 2);
  switch (k) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kI, kI, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: index must be 1, 2 or 3");
  }
  return s;
}

static Matrix kron3(const Matrix& a, const Matrix& b, const Matrix& c) { return kron(kron(a, b), c); }

CliffordPacket clifford_packet(const HermitianOperator& d, const Matrix& u) {
  const Index n = d.dim();
  if (u.rows() != n || u.cols() != n) throw std::invalid_argument("clifford_packet: u has the wrong dimension");
  const double defect = max_abs(u.adjoint() * u - identity(n));
  if (defect > 1e-10)
    throw std::domain_error("clifford_packet: u is not unitary (||u*u - 1||_max = " + std::to_string(defect) + ")");
  CliffordPacket pk;
  pk.D = d;
  pk.u = u;
  const Matrix one2 = identity(2);
  const Matrix one_n = identity(n);
  Matrix block = Matrix::Zero(2 * n, 2 * n);
  block.topRightCorner(n, n) = -kI * u.adjoint();
  block.bottomLeftCorner(n, n) = kI * u;
  pk.q = kron(pauli(3), block);
  pk.q_e = kron3(pauli(3), pauli(2), one_n);
  pk.Dtilde = kron3(pauli(2), one2, d.matrix());
  pk.Gamma = kron3(pauli(2), pauli(3), one_n);
  pk.rho = kron3(pauli(2), one2, one_n);
  pk.anti_Dq = anticommutator(pk.Dtilde, pk.q);
  return pk;
}

HermitianOperator dts(const CliffordPacket& pk, double t, double s) {
  return HermitianOperator((1.0 - t) * pk.Dtilde - t * pk.q * pk.Dtilde * pk.q + s * pk.q, 1e-10);
}

cplx graded_trace(const CliffordPacket& pk, const Matrix& a, const TraceSpec& tau) {
  if (a.rows() != pk.dim() || a.cols() != pk.dim()) throw std::invalid_argument("graded_trace: dimension mismatch");
  return 0.5 * trace_product(pk.Gamma, a, pk.ampliated(tau));
}

Matrix TangentElement::X(const CliffordPacket& pk) const { return alpha * (pk.q * pk.anti_Dq) + beta * pk.q; }

Matrix TangentElement::one_X(const CliffordPacket& pk) const { return beta * pk.q_e; }

Matrix resolvent_power(const HermitianOperator& h, cplx a) {
  return apply_spectral_function(h, [a](double x) { return std::exp(-a * std::log1p(x * x)); });
}

static void require_positive_r(cplx r, const char* who) {
  if (!(r.real() > 0)) throw std::domain_error(std::string(who) + ": requires Re r > 0");
}

static cplx pick_trace(const CliffordPacket& pk, const Matrix& a, const TraceSpec& tau, bool graded) {
  return graded ? graded_trace(pk, a, tau) : trace(a, pk.ampliated(tau));
}

cplx one_form(const CliffordPacket& pk, const TangentElement& x, const TangentElement& y, cplx r, double p,
              const TraceSpec& tau, bool graded) {
  require_positive_r(r, "one_form");
  const cplx a = p / 2.0 + r;
  const Matrix xm = x.X(pk);
  const HermitianOperator at_y(pk.Dtilde + y.X(pk), 1e-10);
  Matrix val = xm * resolvent_power(at_y, a);
  if (x.beta != 0.0) {
    const HermitianOperator at_one_y(pk.Dtilde + y.one_X(pk), 1e-10);
    val -= x.one_X(pk) * resolvent_power(at_one_y, a);
  }
  return pick_trace(pk, val, tau, graded);
}

namespace {

// sinh(x)/x, accurate near 0.
double sinhc(double x) {
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

bool confluent(double a, double b) { return std::abs(a - b) < 1e-3 * (1.0 + std::abs(a)); }

// Y V (K o V*{Dtilde,X}V) V* with K_kj = kernel(d_k, d_j), d the spectrum of Dtilde^2.
template <class Kernel>
Matrix duhamel_operator(const CliffordPacket& pk, const TangentElement& x, const TangentElement& y, Kernel kernel) {
  const HermitianOperator dt(pk.Dtilde);
  const SpectralDecomposition& dec = dt.decomposition();
  const Matrix& v = dec.eigenvectors;
  const RVector d = dec.eigenvalues.array().square();
  Matrix k = v.adjoint() * anticommutator(pk.Dtilde, x.X(pk)) * v;
  for (Index j = 0; j < k.cols(); ++j)
    for (Index i = 0; i < k.rows(); ++i) k(i, j) *= kernel(d(i), d(j));
  return y.X(pk) * (v * k * v.adjoint());
}

}  // namespace

Matrix one_form_derivative_operator_exact(const CliffordPacket& pk, const TangentElement& x, const TangentElement& y,
                                          cplx r, double p) {
  require_positive_r(r, "one_form_derivative_exact");
  const cplx a = p / 2.0 + r;
  auto f = [a](double v) { return std::exp(-a * std::log1p(v)); };
  // first divided difference of (1+v)^{-a}
  return duhamel_operator(pk, x, y, [&](double di, double dj) -> cplx {
    if (!confluent(di, dj)) return (f(di) - f(dj)) / (di - dj);
    const double mid = 0.5 * (di + dj), h = di - dj;
    const cplx base = f(mid);
    const cplx f1 = -a * base / (1.0 + mid);
    const cplx f3 = -a * (-a - 1.0) * (-a - 2.0) * base / std::pow(1.0 + mid, 3);
    const cplx f5 = -a * (-a - 1.0) * (-a - 2.0) * (-a - 3.0) * (-a - 4.0) * base / std::pow(1.0 + mid, 5);
    return f1 + f3 * h * h / 24.0 + f5 * std::pow(h, 4) / 1920.0;
  });
}

Matrix one_form_derivative_operator(const CliffordPacket& pk, const TangentElement& x, const TangentElement& y,
                                    cplx r, double p, DerivativeMethod method, const DerivativeOptions& opts) {
  require_positive_r(r, "one_form_derivative");
  const cplx a = p / 2.0 + r;
  if (method == DerivativeMethod::Duhamel) {
    const QuadratureRule rule = gauss_laguerre(opts.laguerre_nodes, a.real());
    std::vector<cplx> wq(rule.size());
    for (size_t q = 0; q < rule.size(); ++q)
      wq[q] = rule.weights[q] * std::exp(kI * a.imag() * std::log(rule.nodes[q]));
    const cplx pre = -1.0 / gamma_complex(a);
    // int_0^1 e^{-s u d_i} e^{-(1-s) u d_j} ds against u^a e^{-u} du
    return duhamel_operator(pk, x, y, [&](double di, double dj) {
      cplx acc = 0.0;
      const double mid = 0.5 * (di + dj), half = 0.5 * (di - dj);
      for (size_t q = 0; q < rule.size(); ++q) {
        const double uq = rule.nodes[q];
        acc += wq[q] * (std::exp(-uq * mid) * sinhc(uq * half));
      }
      return pre * acc;
    });
  }
  const Matrix xm = x.X(pk), ym = y.X(pk);
  const Matrix one_x = x.one_X(pk), one_y = y.one_X(pk);
  auto alpha = [&](double t) {
    Matrix v = ym * resolvent_power(HermitianOperator(pk.Dtilde + t * xm, 1e-10), a);
    if (y.beta != 0.0) v -= one_y * resolvent_power(HermitianOperator(pk.Dtilde + t * one_x, 1e-10), a);
    return v;
  };
  const double h = opts.fd_step > 0 ? opts.fd_step : 1e-4 * (1.0 + HermitianOperator(pk.Dtilde).norm());
  const Matrix d1 = (alpha(h) - alpha(-h)) / (2.0 * h);
  const Matrix d2 = (alpha(h / 2) - alpha(-h / 2)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

cplx one_form_derivative_exact(const CliffordPacket& pk, const TangentElement& x, const TangentElement& y, cplx r,
                               double p, const TraceSpec& tau, bool graded) {
  return pick_trace(pk, one_form_derivative_operator_exact(pk, x, y, r, p), tau, graded);
}

cplx one_form_derivative(const CliffordPacket& pk, const TangentElement& x, const TangentElement& y, cplx r,
                         double p, const TraceSpec& tau, DerivativeMethod method, const DerivativeOptions& opts) {
  return pick_trace(pk, one_form_derivative_operator(pk, x, y, r, p, method, opts), tau, opts.graded);
}

HorizontalSides horizontal_sides(const CliffordPacket& pk, cplx r, double p, double s0, const TraceSpec& tau,
                                 int nodes) {
  const QuadratureRule rule = gauss_legendre(nodes, 0.0, s0);
  HorizontalSides out{0.0, 0.0, 0.0};
  const TangentElement ds{0.0, 1.0};
  for (size_t k = 0; k < rule.size(); ++k) {
    const double s = rule.nodes[k];
    const cplx v1 = one_form(pk, ds, plane_point(1.0, s), r, p, tau, true);
    const cplx v0 = one_form(pk, ds, plane_point(0.0, s), r, p, tau, true);
    out.at_t1 += rule.weights[k] * v1;
    out.at_t0 += rule.weights[k] * v0;
    out.scale += rule.weights[k] * (std::abs(v1) + std::abs(v0));
  }
  return out;
}

double RectangleCirculation::scale() const {
  return std::abs(bottom) + std::abs(right) + std::abs(top) + std::abs(left);
}

RectangleCirculation stokes_rectangle(const CliffordPacket& pk, cplx r, double p, double s0, const TraceSpec& tau,
                                      int nodes_per_edge, bool graded) {
  const QuadratureRule rt = gauss_legendre(nodes_per_edge, 0.0, 1.0);
  const QuadratureRule rs = gauss_legendre(nodes_per_edge, 0.0, s0);
  const TangentElement dt{-1.0, 0.0}, ds{0.0, 1.0};
  RectangleCirculation c{0.0, 0.0, 0.0, 0.0};
  for (size_t k = 0; k < rt.size(); ++k) {
    const double t = rt.nodes[k];
    c.bottom += rt.weights[k] * one_form(pk, dt, plane_point(t, 0.0), r, p, tau, graded);
    c.top -= rt.weights[k] * one_form(pk, dt, plane_point(t, s0), r, p, tau, graded);
  }
  for (size_t k = 0; k < rs.size(); ++k) {
    const double s = rs.nodes[k];
    c.right += rs.weights[k] * one_form(pk, ds, plane_point(1.0, s), r, p, tau, graded);
    c.left -= rs.weights[k] * one_form(pk, ds, plane_point(0.0, s), r, p, tau, graded);
  }
  return c;
}

MainsSample mains_sample(const CliffordPacket& pk, double t, cplx r, double p, const TraceSpec& tau) {
  require_positive_r(r, "mains_sample");
  const cplx a = p / 2.0 + r;
  MainsSample out;
  out.t = t;
  const Matrix ddt = -pk.q * pk.anti_Dq;
  out.graded = graded_trace(pk, ddt * resolvent_power(dts(pk, t, 0.0), a), tau);
  const Matrix& d = pk.D.matrix();
  const Matrix x1 = pk.u.adjoint() * commutator(d, pk.u);
  const Matrix x2 = pk.u * commutator(d, pk.u.adjoint());
  out.first = trace_product(x1, resolvent_power(HermitianOperator(d + t * x1, 1e-10), a), tau);
  out.second = trace_product(x2, resolvent_power(HermitianOperator(d + t * x2, 1e-10), a), tau);
  return out;
}

double vertical_decay_norm(const CliffordPacket& pk, double s, cplx r, double p, int nodes) {
  const cplx a = p / 2.0 + r;
  const Matrix ddt = -pk.q * pk.anti_Dq;
  const QuadratureRule rule = gauss_legendre(nodes, 0.0, 1.0);
  double total = 0.0;
  for (size_t k = 0; k < rule.size(); ++k)
    total += rule.weights[k] * trace_norm(ddt * resolvent_power(dts(pk, rule.nodes[k], s), a));
  return total;
}

}  // namespace sfindex
