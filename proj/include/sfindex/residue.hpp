#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

namespace sfindex {

/// Pole correction for samples of a truncated integral: with momentum cutoffs
/// K_i the simple pole c/w is replaced by c (1 - mean_i K_i^{-beta w}) / w.
struct CutoffModel {
  std::vector<double> cutoffs;
  double beta = 1.0;
};

struct ResidueOptions {
  int fit_degree = 2;
  std::optional<CutoffModel> cutoff;
  double max_condition = 1e12;
};

struct ResidueFit {
  std::vector<double> w;
  std::vector<double> values;
  std::vector<double> coefficients;  // c_{-1} (the residue), then c_0, c_1, ...
  double residue = 0.0;
  double residual_norm = 0.0;
  double condition = 0.0;

  nlohmann::json to_json() const;
};

/// Least-squares fit of w F(w) = c_{-1} + c_0 w + ... + c_{d-1} w^d, optionally
/// with the cutoff-corrected pole term. Throws when fewer than d + 2 samples are
/// given, when some w <= 0, or when the design matrix condition exceeds the limit.
ResidueFit residue_extrapolate(const std::vector<double>& w, const std::vector<double>& values,
                               const ResidueOptions& opts = {});

/// n points log-spaced on [lo, hi].
std::vector<double> log_spaced(double lo, double hi, int n);

}  // namespace sfindex
