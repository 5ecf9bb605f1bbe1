#include "sfindex/linalg.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace sfindex {

namespace {

// Clusters of eigenvalues closer than this are treated as degenerate.
bool confluent(double a, double b) { return std::abs(a - b) < 1e-8 * (1.0 + std::abs(a)); }

void fix_phase(Eigen::Ref<Vector> v) {
  const Index n = v.size();
  const double cut = 0.5 / static_cast<double>(n);
  for (Index i = 0; i < n; ++i) {
    if (std::norm(v(i)) > cut) {
      const cplx ph = v(i) / std::abs(v(i));
      v /= ph;
      v(i) = cplx(v(i).real(), 0.0);
      return;
    }
  }
}

// Replace the eigenvectors of a degenerate cluster by Gram-Schmidt applied
// to the projections of e_0, e_1, ... onto the cluster, in index order.
void canonical_cluster(Matrix& vecs, Index start, Index m) {
  const Index n = vecs.rows();
  const Matrix vc = vecs.middleCols(start, m);
  const Matrix coords = vc.adjoint();  // column c holds P e_c in cluster coordinates
  Matrix basis(m, m);
  Index found = 0;
  for (double threshold : {1e-3, 1e-9}) {
    found = 0;
    for (Index c = 0; c < n && found < m; ++c) {
      Vector v = coords.col(c);
      for (int pass = 0; pass < 2; ++pass)
        for (Index b = 0; b < found; ++b) v -= basis.col(b) * basis.col(b).dot(v);
      const double nv = v.norm();
      if (nv > threshold) basis.col(found++) = v / nv;
    }
    if (found == m) break;
  }
  if (found < m) return;  // keep the solver's basis
  vecs.middleCols(start, m) = vc * basis;
}

void canonicalize(SpectralDecomposition& d) {
  const Index n = d.eigenvalues.size();
  Index i = 0;
  while (i < n) {
    Index j = i + 1;
    while (j < n && confluent(d.eigenvalues(j), d.eigenvalues(j - 1))) ++j;
    if (j - i == 1)
      fix_phase(d.eigenvectors.col(i));
    else
      canonical_cluster(d.eigenvectors, i, j - i);
    i = j;
  }
}

std::vector<double> singular_values(const Matrix& a) {
  Matrix work = a;
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  std::vector<double> s(static_cast<size_t>(std::min(m, n)));
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m, s.data(),
                                         nullptr, 1, nullptr, 1);
  if (info != 0) throw std::runtime_error("singular value solver failed, info=" + std::to_string(info));
  return s;
}

}  // namespace

HermitianOperator::HermitianOperator(const Matrix& m, double asymmetry_ceiling)
    : cache_(std::make_shared<Cache>()) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("HermitianOperator: matrix must be square and nonempty");
  if (!m.allFinite()) throw std::invalid_argument("HermitianOperator: non-finite entries");
  const double scale = max_abs(m);
  const double defect = hermitian_defect(m);
  if (defect > asymmetry_ceiling * scale)
    throw std::invalid_argument("HermitianOperator: asymmetry " + std::to_string(defect) +
                                " exceeds ceiling relative to max entry " + std::to_string(scale));
  m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::diagonal(const RVector& d) {
  Matrix m = Matrix::Zero(d.size(), d.size());
  m.diagonal() = d.cast<cplx>();
  return HermitianOperator(m);
}

const SpectralDecomposition& HermitianOperator::decomposition() const {
  if (!cache_) throw std::logic_error("HermitianOperator: empty operator");
  std::call_once(cache_->once, [this] { cache_->dec = eig_hermitian_matrix(m_); });
  return cache_->dec;
}

double HermitianOperator::norm() const {
  const RVector& ev = eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

SpectralDecomposition eig_hermitian(const HermitianOperator& h) { return h.decomposition(); }

SpectralDecomposition eig_hermitian_matrix(const Matrix& h) {
  const lapack_int n = static_cast<lapack_int>(h.rows());
  SpectralDecomposition d;
  d.eigenvectors = h;
  d.eigenvalues.resize(n);
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, d.eigenvectors.data(), n, d.eigenvalues.data());
  if (info != 0) {
    std::ostringstream os;
    os << "eigensolver did not converge (info=" << info << ", dim=" << n
       << ", max|entry|=" << max_abs(h) << ", hermitian defect=" << hermitian_defect(h) << ")";
    throw std::runtime_error(os.str());
  }
  canonicalize(d);
  return d;
}

RVector eigvals_hermitian(const Matrix& h) {
  const lapack_int n = static_cast<lapack_int>(h.rows());
  Matrix work = h;
  RVector w(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, w.data());
  if (info != 0)
    throw std::runtime_error("eigenvalue solver did not converge (info=" + std::to_string(info) + ")");
  return w;
}

Matrix from_spectrum(const SpectralDecomposition& dec, const Vector& values) {
  const Matrix& v = dec.eigenvectors;
  return v * values.asDiagonal() * v.adjoint();
}

Matrix apply_spectral_function(const HermitianOperator& h, const SpectralFunction& f) {
  const SpectralDecomposition& dec = h.decomposition();
  Vector vals(dec.eigenvalues.size());
  for (Index i = 0; i < vals.size(); ++i) {
    const double lam = dec.eigenvalues(i);
    vals(i) = f(lam);
    if (!std::isfinite(vals(i).real()) || !std::isfinite(vals(i).imag())) {
      std::ostringstream os;
      os << "spectral function is not finite at eigenvalue " << lam;
      throw std::domain_error(os.str());
    }
  }
  return from_spectrum(dec, vals);
}

double default_zero_tol(const HermitianOperator& h) { return 1e-10 * h.norm(); }

Matrix positive_spectral_projection(const HermitianOperator& h, std::optional<double> zero_tol) {
  const double tol = zero_tol ? *zero_tol : default_zero_tol(h);
  if (tol < 0) throw std::invalid_argument("zero_tol must be nonnegative");
  const SpectralDecomposition& dec = h.decomposition();
  Index first = 0;
  while (first < dec.eigenvalues.size() && dec.eigenvalues(first) < -tol) ++first;
  const Index r = dec.eigenvalues.size() - first;
  if (r == 0) return Matrix::Zero(h.dim(), h.dim());
  const auto block = dec.eigenvectors.rightCols(r);
  return block * block.adjoint();
}

Matrix bounded_transform(const HermitianOperator& h) {
  return apply_spectral_function(h, [](double x) { return cplx(x / std::sqrt(1.0 + x * x)); });
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == a.cols() && hermitian_defect(a) <= 1e-14 * max_abs(a)) {
    const RVector w = eigvals_hermitian(0.5 * (a + a.adjoint()));
    return std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
  }
  return singular_values(a).front();
}

double trace_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  double s = 0.0;
  for (double x : singular_values(a)) s += x;
  return s;
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double hermitian_defect(const Matrix& a) { return max_abs(a - a.adjoint()); }

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

Matrix identity(Index n) { return Matrix::Identity(n, n); }

TraceSpec::TraceSpec(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  for (const Block& b : blocks_) {
    if (b.size < 1) throw std::invalid_argument("TraceSpec: block sizes must be positive");
    if (!(b.weight >= 0.0) || !std::isfinite(b.weight))
      throw std::invalid_argument("TraceSpec: weights must be finite and nonnegative");
    dim_ += b.size;
  }
}

TraceSpec TraceSpec::uniform(Index n, double weight) { return TraceSpec({{n, weight}}); }

TraceSpec TraceSpec::ampliate(Index k) const {
  std::vector<Block> out;
  for (Index i = 0; i < k; ++i) out.insert(out.end(), blocks_.begin(), blocks_.end());
  return TraceSpec(std::move(out));
}

TraceSpec TraceSpec::direct_sum(const TraceSpec& a, const TraceSpec& b) {
  std::vector<Block> out = a.blocks_;
  out.insert(out.end(), b.blocks_.begin(), b.blocks_.end());
  return TraceSpec(std::move(out));
}

double TraceSpec::total_weight() const {
  double s = 0.0;
  for (const Block& b : blocks_) s += b.weight * static_cast<double>(b.size);
  return s;
}

bool TraceSpec::is_trivial() const {
  for (const Block& b : blocks_)
    if (b.weight != 1.0) return false;
  return true;
}

RVector TraceSpec::weights() const {
  RVector w(dim_);
  Index pos = 0;
  for (const Block& b : blocks_) {
    w.segment(pos, b.size).setConstant(b.weight);
    pos += b.size;
  }
  return w;
}

cplx trace(const Matrix& t, const TraceSpec& tau) {
  if (t.rows() != tau.dim() || t.cols() != tau.dim())
    throw std::invalid_argument("trace: dimension " + std::to_string(t.rows()) +
                                " does not match TraceSpec dimension " + std::to_string(tau.dim()));
  cplx s = 0.0;
  Index pos = 0;
  for (const auto& b : tau.blocks()) {
    if (b.weight != 0.0) s += b.weight * t.diagonal().segment(pos, b.size).sum();
    pos += b.size;
  }
  return s;
}

cplx trace_product(const Matrix& a, const Matrix& b, const TraceSpec& tau) {
  if (a.rows() != tau.dim() || b.cols() != tau.dim() || a.cols() != b.rows())
    throw std::invalid_argument("trace_product: dimension mismatch");
  const Vector diag = a.cwiseProduct(b.transpose()).rowwise().sum();
  return (tau.weights().cast<cplx>().array() * diag.array()).sum();
}

std::string matrix_to_text(const Matrix& m) {
  std::ostringstream os;
  os.precision(17);
  os << "complex-matrix " << m.rows() << " " << m.cols() << "\n";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) os << " ";
      os << m(i, j).real() << "," << m(i, j).imag();
    }
    os << "\n";
  }
  return os.str();
}

Matrix matrix_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string tag;
  Index rows = 0, cols = 0;
  if (!(is >> tag >> rows >> cols) || tag != "complex-matrix" || rows < 1 || cols < 1)
    throw std::invalid_argument("matrix text: expected header 'complex-matrix <rows> <cols>'");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      std::string tok;
      if (!(is >> tok)) throw std::invalid_argument("matrix text: too few entries");
      const auto comma = tok.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("matrix text: entry '" + tok + "' is not re,im");
      m(i, j) = cplx(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
    }
  std::string extra;
  if (is >> extra) throw std::invalid_argument("matrix text: trailing data");
  if (!m.allFinite()) throw std::invalid_argument("matrix text: non-finite entry");
  return m;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw std::invalid_argument("matrix json: expected array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    if (static_cast<Index>(j[r].size()) != cols) throw std::invalid_argument("matrix json: ragged rows");
    for (Index c = 0; c < cols; ++c) {
      const auto& e = j[r][c];
      if (e.is_number())
        m(r, c) = e.get<double>();
      else if (e.is_array() && e.size() == 2)
        m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
      else
        throw std::invalid_argument("matrix json: entries must be numbers or [re, im]");
    }
  }
  return m;
}

nlohmann::json trace_spec_to_json(const TraceSpec& t) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : t.blocks()) blocks.push_back({b.size, b.weight});
  return {{"blocks", blocks}};
}

TraceSpec trace_spec_from_json(const nlohmann::json& j) {
  std::vector<TraceSpec::Block> blocks;
  for (const auto& b : j.at("blocks")) blocks.push_back({b.at(0).get<Index>(), b.at(1).get<double>()});
  return TraceSpec(std::move(blocks));
}

}  // namespace sfindex
