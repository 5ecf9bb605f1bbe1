#include "sfindex/weights.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sfindex {

Matrix bracket_power(const HermitianOperator& d, cplx w) {
  return apply_spectral_function(d, [w](double x) { return std::exp(w * std::log(1.0 + x * x)); });
}

static void require_same_dim(const HermitianOperator& d, const Matrix& t, const char* who) {
  if (t.rows() != d.dim() || t.cols() != d.dim())
    throw std::invalid_argument(std::string(who) + ": operand dimension does not match D");
}

double phi_s_weight(const HermitianOperator& d, const Matrix& t, double s, const TraceSpec& tau) {
  require_same_dim(d, t, "phi_s_weight");
  if (!(s > 0)) throw std::domain_error("phi_s_weight: s must be positive");
  const double scale = std::max(max_abs(t), 1e-300);
  if (hermitian_defect(t) > 1e-10 * scale) throw std::domain_error("phi_s_weight: T is not self-adjoint");
  const RVector ev = eigvals_hermitian(0.5 * (t + t.adjoint()));
  const double tn = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  if (ev(0) < -1e-10 * tn) {
    std::ostringstream os;
    os << "phi_s_weight: T is not positive (min eigenvalue " << ev(0) << ")";
    throw std::domain_error(os.str());
  }
  const Matrix x = bracket_power(d, -s / 4.0);
  return trace(x * t * x, tau).real();
}

Matrix delta_map(const HermitianOperator& d, const Matrix& t) {
  require_same_dim(d, t, "delta_map");
  return commutator(bracket_power(d, 0.5), t);
}

std::pair<Matrix, Matrix> lr_maps(const HermitianOperator& d, const Matrix& t) {
  require_same_dim(d, t, "lr_maps");
  const Matrix d2 = d.matrix() * d.matrix();
  const Matrix c = commutator(d2, t);
  const Matrix inv_sqrt = bracket_power(d, -0.5);
  return {inv_sqrt * c, c * inv_sqrt};
}

Matrix sigma_z(const HermitianOperator& d, const Matrix& t, cplx z) {
  require_same_dim(d, t, "sigma_z");
  return bracket_power(d, z / 2.0) * t * bracket_power(d, -z / 2.0);
}

double qn_seminorm(const HermitianOperator& d, const Matrix& t, int n, double p, const TraceSpec& tau) {
  if (n < 1) throw std::invalid_argument("qn_seminorm: n must be at least 1");
  if (p < 1) throw std::invalid_argument("qn_seminorm: p must be at least 1");
  const double s = p + 1.0 / n;
  const double nt = operator_norm(t);
  const Matrix tt = t.adjoint() * t;
  const Matrix ttd = t * t.adjoint();
  const double v = nt * nt + phi_s_weight(d, 0.5 * (tt + tt.adjoint()), s, tau) +
                   phi_s_weight(d, 0.5 * (ttd + ttd.adjoint()), s, tau);
  return std::sqrt(std::max(v, 0.0));
}

Report perturbation_bound_report(const HermitianOperator& d, const HermitianOperator& b,
                                 const std::vector<double>& s_samples, const std::vector<double>& rho_samples,
                                 const PerturbationBoundOptions& opts) {
  if (b.dim() != d.dim()) throw std::invalid_argument("perturbation_bound_report: dimension mismatch");
  const double nb = b.norm();
  for (double s : s_samples)
    if (s < 2.0 * nb * (1.0 - 1e-12))
      throw std::domain_error("perturbation_bound_report: sample s = " + std::to_string(s) +
                              " is below 2||B|| = " + std::to_string(2.0 * nb));
  for (double rho : rho_samples)
    if (!(rho > 0)) throw std::invalid_argument("perturbation_bound_report: rho must be positive");

  Report rep("perturbation-bounds", "bounded perturbation norms");
  rep.inputs = {{"dim", d.dim()}, {"norm_B", nb}, {"s", s_samples}, {"rho", rho_samples}};
  const Index n = d.dim();
  const Matrix one = identity(n);
  const Matrix d2 = d.matrix() * d.matrix();
  const HermitianOperator db(d.matrix() + b.matrix());

  for (double rho : rho_samples) {
    const std::string tag = "rho=" + std::to_string(rho).substr(0, 4);
    const double f1 = operator_norm(bracket_power(d, rho) * bracket_power(db, -rho));
    const double f2 = operator_norm(bracket_power(db, rho) * bracket_power(d, -rho));
    rep.expect_true("shifted_power_ratio_finite[" + tag + "]", std::isfinite(f1) && std::isfinite(f2),
                    Source::Published);
    rep.record("norm (1+D^2)^r(1+(D+B)^2)^-r [" + tag + "]", f1);
    rep.record("norm (1+(D+B)^2)^r(1+D^2)^-r [" + tag + "]", f2);

    std::vector<double> norms;
    for (double s : s_samples) {
      const HermitianOperator shifted(one + d2 + s * b.matrix() + s * s * one, 1e-10);
      const RVector sev = shifted.eigenvalues();
      if (sev(0) <= 0) throw std::domain_error("perturbation_bound_report: shifted operator not positive");
      const Matrix c = bracket_power(d, rho) *
                       apply_spectral_function(shifted, [rho](double x) { return cplx(std::pow(x, -rho)); });
      norms.push_back(operator_norm(c));
    }
    double sup = 0.0;
    for (size_t i = 0; i < norms.size(); ++i) {
      sup = std::max(sup, norms[i]);
      rep.record("norm C_rho [" + tag + ", s=" + std::to_string(s_samples[i]) + "]", norms[i]);
    }
    if (rho <= 1.0) {
      rep.expect_at_most("sup C_rho <= 4^rho [" + tag + "]", sup, std::pow(4.0, rho), Source::Published);
    } else {
      rep.expect_true("sup C_rho finite [" + tag + "]", std::isfinite(sup), Source::Published);
    }
    if (norms.size() >= 2)
      rep.expect_at_most("C_rho growth over s [" + tag + "]", norms.back() / norms.front(), 1.0 + opts.trend_tol,
                         Source::Computed);
  }
  return rep;
}

Report affine_weight_equivalence(const HermitianOperator& d, const HermitianOperator& b, const Matrix& t,
                                 const std::vector<double>& s_values, const TraceSpec& tau) {
  Report rep("affine-weight-equivalence", "equivalent weights under bounded perturbation");
  rep.inputs = {{"dim", d.dim()}, {"s", s_values}};
  const HermitianOperator db(d.matrix() + b.matrix());
  for (double s : s_values) {
    const double w_d = phi_s_weight(d, t, s, tau);
    const double w_b = phi_s_weight(db, t, s, tau);
    const double c1 = std::pow(operator_norm(bracket_power(db, -s / 4.0) * bracket_power(d, s / 4.0)), 2);
    const double c2 = std::pow(operator_norm(bracket_power(d, -s / 4.0) * bracket_power(db, s / 4.0)), 2);
    const std::string tag = "[s=" + std::to_string(s).substr(0, 4) + "]";
    const double slack = 1e-12 * (1.0 + w_d + w_b);
    rep.expect_at_most("phi^{D+B} - C1 phi^D " + tag, w_b - c1 * w_d, slack, Source::Published);
    rep.expect_at_most("phi^D - C2 phi^{D+B} " + tag, w_d - c2 * w_b, slack, Source::Published);
    rep.record("C1 " + tag, c1);
    rep.record("C2 " + tag, c2);
  }
  return rep;
}

}  // namespace sfindex
