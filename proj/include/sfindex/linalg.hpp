#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace sfindex {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

struct SpectralDecomposition {
  RVector eigenvalues;  // ascending
  Matrix eigenvectors;  // columns, unitary
};

/// Dense self-adjoint matrix, stored symmetrized, with a write-once
/// cached eigendecomposition. Copies share the cache.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const Matrix& m, double asymmetry_ceiling = 1e-12);
  static HermitianOperator diagonal(const RVector& d);

  const Matrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }
  const SpectralDecomposition& decomposition() const;
  const RVector& eigenvalues() const { return decomposition().eigenvalues; }
  const Matrix& eigenvectors() const { return decomposition().eigenvectors; }
  /// Spectral radius, i.e. the operator norm.
  double norm() const;

 private:
  struct Cache {
    std::once_flag once;
    SpectralDecomposition dec;
  };
  Matrix m_;
  std::shared_ptr<Cache> cache_;
};

SpectralDecomposition eig_hermitian(const HermitianOperator& h);
/// Eigendecomposition of a matrix already known to be Hermitian.
SpectralDecomposition eig_hermitian_matrix(const Matrix& h);
RVector eigvals_hermitian(const Matrix& h);

using SpectralFunction = std::function<cplx(double)>;

Matrix apply_spectral_function(const HermitianOperator& h, const SpectralFunction& f);
/// V diag(values) V^dagger for a precomputed decomposition.
Matrix from_spectrum(const SpectralDecomposition& dec, const Vector& values);

/// chi_{[-zero_tol, inf)}(H); default tolerance 1e-10 * ||H||.
Matrix positive_spectral_projection(const HermitianOperator& h,
                                    std::optional<double> zero_tol = std::nullopt);
double default_zero_tol(const HermitianOperator& h);

/// H (1 + H^2)^{-1/2}.
Matrix bounded_transform(const HermitianOperator& h);

double operator_norm(const Matrix& a);
double trace_norm(const Matrix& a);
double max_abs(const Matrix& a);
double hermitian_defect(const Matrix& a);  // ||A - A^dagger||_max

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix identity(Index n);

/// Block-weighted trace: a finite stand-in for a semifinite trace on a
/// direct sum of matrix factors.
class TraceSpec {
 public:
  struct Block {
    Index size;
    double weight;
  };

  TraceSpec() = default;
  explicit TraceSpec(std::vector<Block> blocks);
  static TraceSpec uniform(Index n, double weight = 1.0);
  /// Ampliation tr_k (x) tau, with the base index innermost.
  TraceSpec ampliate(Index k) const;
  static TraceSpec direct_sum(const TraceSpec& a, const TraceSpec& b);

  const std::vector<Block>& blocks() const { return blocks_; }
  Index dim() const { return dim_; }
  double total_weight() const;  // sum of weight * size
  bool is_trivial() const;      // every weight equals 1
  /// Per-index weights.
  RVector weights() const;

 private:
  std::vector<Block> blocks_;
  Index dim_ = 0;
};

cplx trace(const Matrix& t, const TraceSpec& tau);
/// tau(A B) without forming the product.
cplx trace_product(const Matrix& a, const Matrix& b, const TraceSpec& tau);

// Text format: header "complex-matrix <rows> <cols>" then row-major re,im pairs.
std::string matrix_to_text(const Matrix& m);
Matrix matrix_from_text(const std::string& text);
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json trace_spec_to_json(const TraceSpec& t);
TraceSpec trace_spec_from_json(const nlohmann::json& j);

}  // namespace sfindex
