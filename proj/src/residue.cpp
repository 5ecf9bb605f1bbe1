#include "sfindex/residue.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sfindex {

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (n < 1 || !(lo > 0) || !(hi >= lo)) throw std::invalid_argument("log_spaced: bad range");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = n == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  return out;
}

nlohmann::json ResidueFit::to_json() const {
  return {{"w", w},
          {"values", values},
          {"coefficients", coefficients},
          {"residue", residue},
          {"residual_norm", residual_norm},
          {"condition", condition}};
}

ResidueFit residue_extrapolate(const std::vector<double>& w, const std::vector<double>& values,
                               const ResidueOptions& opts) {
  const int d = opts.fit_degree;
  if (d < 0) throw std::invalid_argument("residue_extrapolate: fit degree must be nonnegative");
  if (w.size() != values.size()) throw std::invalid_argument("residue_extrapolate: sample size mismatch");
  if (static_cast<int>(w.size()) < d + 2)
    throw std::invalid_argument("residue_extrapolate: need at least fit_degree + 2 = " + std::to_string(d + 2) +
                                " samples");
  for (double x : w)
    if (!(x > 0)) throw std::domain_error("residue_extrapolate: sample abscissae must be positive");

  const Eigen::Index rows = static_cast<Eigen::Index>(w.size());
  Eigen::MatrixXd a(rows, d + 1);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double x = w[i];
    double pole = 1.0;  // w times the pole term
    if (opts.cutoff) {
      double mean = 0.0;
      for (double k : opts.cutoff->cutoffs) mean += std::pow(k, -opts.cutoff->beta * x);
      mean /= static_cast<double>(opts.cutoff->cutoffs.size());
      pole = 1.0 - mean;
    }
    a(i, 0) = pole;
    for (int j = 1; j <= d; ++j) a(i, j) = std::pow(x, j);
    b(i) = x * values[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!(cond <= opts.max_condition)) {
    std::ostringstream os;
    os << "residue_extrapolate: design matrix condition " << cond << " exceeds " << opts.max_condition
       << "; widen the spread of the sample points or lower the fit degree";
    throw std::runtime_error(os.str());
  }
  const Eigen::VectorXd c = svd.solve(b);
  ResidueFit fit;
  fit.w = w;
  fit.values = values;
  fit.coefficients.assign(c.data(), c.data() + c.size());
  fit.residue = c(0);
  fit.residual_norm = (a * c - b).norm();
  fit.condition = cond;
  return fit;
}

}  // namespace sfindex
