#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfindex/linalg.hpp"

namespace sfindex {

/// A continuous path t in [0, 1] -> D_t of self-adjoint operators.
class OperatorPath {
 public:
  enum class Form { StraightLine, Sampled };

  /// D_t = D + t u[D, u*].
  static OperatorPath straight_line(const HermitianOperator& d, const Matrix& u);
  /// lipschitz, when known, bounds ||D_t - D_s|| <= lipschitz |t - s|.
  static OperatorPath sampled(std::function<HermitianOperator(double)> sampler,
                              std::optional<double> lipschitz = std::nullopt);

  HermitianOperator at(double t) const { return sampler_(t); }
  Form form() const { return form_; }
  std::optional<double> lipschitz() const { return lipschitz_; }
  /// t -> D_{phi(t)}; phi must be monotone with phi(0) = 0, phi(1) = 1 for the result to be a reparametrization.
  OperatorPath reparametrized(std::function<double(double)> phi, std::optional<double> lipschitz) const;
  /// The restriction to [a, b], rescaled to [0, 1].
  OperatorPath restricted(double a, double b) const;
  /// t -> v D_t v*.
  OperatorPath conjugated(const Matrix& v) const;

  /// ||D_1 - u D_0 u*||_max for the straight-line form.
  double endpoint_defect(const Matrix& u) const;

 private:
  Form form_ = Form::Sampled;
  std::function<HermitianOperator(double)> sampler_;
  std::optional<double> lipschitz_;
};

struct Crossing {
  double t;
  int direction;  // +1 into [0, inf), -1 out of it
  Index index;    // position in the ascending spectrum at the right end of the bracket
  double weight;  // <v, W v> for the crossing eigenvector
};

struct CrossingReport {
  double sf = 0.0;
  std::vector<Crossing> crossings;
  int evaluations = 0;
  int bisections = 0;
  nlohmann::json to_json() const;
};

struct CrossingOptions {
  int initial_grid = 16;
  double tol = 1e-7;                     // crossing times localized to this width
  std::optional<double> zero_tol;        // default 1e-10 ||D_0||
  double overlap_floor = 0.5;            // minimal squared overlap for an unambiguous match
};

/// Counts eigenvalue crossings of 0 along the path. A zero eigenvalue counts as
/// nonnegative, so a crossing belongs to the half-open bracket (a, b].
CrossingReport sf_crossings(const OperatorPath& path, const TraceSpec& tau, const CrossingOptions& opts = {});

/// tau((Q - P)^{2k+1}).
double index_pair(const Matrix& p, const Matrix& q, int k, const TraceSpec& tau);

struct PartitionOptions {
  int initial_grid = 16;
  int k = 1;
  double gap_low = 0.5;   // eigenvalues of P_b - P_a must avoid [gap_low, 1 - gap_eps] in modulus
  double gap_eps = 1e-6;
  double min_width = 1e-9;
  std::optional<double> zero_tol;
};

struct PartitionReport {
  double value = 0.0;
  std::vector<double> nodes;
  std::vector<double> pieces;
  nlohmann::json to_json() const;
};

using ProjectionPath = std::function<Matrix(double)>;

/// sum_i tau((P_{t_i} - P_{t_{i-1}})^{2k+1}) on a partition refined until every
/// step is an honest Fredholm-pair step.
PartitionReport sf_partition(const ProjectionPath& path, const TraceSpec& tau, const PartitionOptions& opts = {});
/// Partition sum for the nonnegative spectral projections of an operator path.
PartitionReport sf_partition(const OperatorPath& path, const TraceSpec& tau, const PartitionOptions& opts = {});

struct BreuerIndexResult {
  double value = 0.0;
  double kernel_trace = 0.0;
  double cokernel_trace = 0.0;
  double gap_ratio = 0.0;  // smallest kept / largest discarded singular value
  double leakage = 0.0;    // ||(1 - Q_c) T Q_d|| / ||T||
  std::vector<std::string> warnings;
};

/// tau(kernel projection) - tau(cokernel projection) of T: Q_d H -> Q_c H.
BreuerIndexResult breuer_index(const Matrix& t, const Matrix& domain_proj, const Matrix& codomain_proj,
                               const TraceSpec& tau, double rank_tol = 1e-9);

struct ToeplitzIndexOptions {
  std::optional<double> zero_tol;
  bool doubled = false;
  double mu = 0.0;  // used when doubled; required > 0 then
  int k = 1;
};

struct ToeplitzIndexResult {
  double direct = 0.0;
  std::optional<double> doubled;
  std::vector<std::string> warnings;
};

/// index_pair(P, u P u*) with P the nonnegative spectral projection of D, and
/// optionally the same quantity for (D_mu, diag(u, 1)).
ToeplitzIndexResult toeplitz_index(const HermitianOperator& d, const Matrix& u, const TraceSpec& tau,
                                   const ToeplitzIndexOptions& opts = {});

struct IntegralSample {
  double z;
  cplx value;
};

/// F(z) = int_0^1 tau(u[D,u*] (1 + (D + t u[D,u*])^2)^{-1/2-z}) dt with a
/// t_nodes-point Gauss-Legendre rule; one eigendecomposition per node.
std::vector<IntegralSample> sf_integral_samples(const HermitianOperator& d, const Matrix& u,
                                                const std::vector<double>& z_list, int t_nodes,
                                                const TraceSpec& tau);

}  // namespace sfindex
