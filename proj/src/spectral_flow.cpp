#include "sfindex/spectral_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sfindex/constructions.hpp"
#include "sfindex/quadrature.hpp"

namespace sfindex {

OperatorPath OperatorPath::straight_line(const HermitianOperator& d, const Matrix& u) {
  const Matrix x = u * commutator(d.matrix(), u.adjoint());
  const Matrix base = d.matrix();
  OperatorPath p;
  p.form_ = Form::StraightLine;
  p.sampler_ = [base, x](double t) { return HermitianOperator(base + t * x, 1e-10); };
  const RVector ev = eigvals_hermitian(0.5 * (x + x.adjoint()));
  p.lipschitz_ = ev.size() ? std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))) : 0.0;
  return p;
}

OperatorPath OperatorPath::sampled(std::function<HermitianOperator(double)> sampler, std::optional<double> lipschitz) {
  OperatorPath p;
  p.form_ = Form::Sampled;
  p.sampler_ = std::move(sampler);
  p.lipschitz_ = lipschitz;
  return p;
}

OperatorPath OperatorPath::reparametrized(std::function<double(double)> phi, std::optional<double> lipschitz) const {
  auto inner = sampler_;
  return sampled([inner, phi](double t) { return inner(phi(t)); }, lipschitz);
}

OperatorPath OperatorPath::restricted(double a, double b) const {
  auto inner = sampler_;
  std::optional<double> lip;
  if (lipschitz_) lip = *lipschitz_ * std::abs(b - a);
  return sampled([inner, a, b](double t) { return inner(a + (b - a) * t); }, lip);
}

OperatorPath OperatorPath::conjugated(const Matrix& v) const {
  auto inner = sampler_;
  const Matrix vs = v.adjoint();
  return sampled([inner, v, vs](double t) { return HermitianOperator(v * inner(t).matrix() * vs, 1e-9); },
                 lipschitz_);
}

double OperatorPath::endpoint_defect(const Matrix& u) const {
  return max_abs(at(1.0).matrix() - u * at(0.0).matrix() * u.adjoint());
}

nlohmann::json CrossingReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const Crossing& c : crossings)
    cs.push_back({{"t", c.t}, {"direction", c.direction}, {"index", c.index}, {"weight", c.weight}});
  return {{"sf", sf}, {"crossings", cs}, {"evaluations", evaluations}, {"bisections", bisections}};
}

namespace {

// Square assignment maximizing total score (Hungarian method on -score).
std::vector<int> best_assignment(const Eigen::MatrixXd& score) {
  const int n = static_cast<int>(score.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -score(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> match(n);
  for (int j = 1; j <= n; ++j) match[p[j] - 1] = j - 1;
  return match;
}

struct PathNode {
  double t;
  Matrix h;
  SpectralDecomposition dec;
};

class CrossingTracker {
 public:
  CrossingTracker(const OperatorPath& path, const TraceSpec& tau, const CrossingOptions& opts)
      : path_(path), weights_(tau.weights()), opts_(opts) {}

  PathNode node(double t) {
    const HermitianOperator h = path_.at(t);
    if (h.dim() != weights_.size()) throw std::invalid_argument("sf_crossings: trace dimension mismatch");
    ++report.evaluations;
    return {t, h.matrix(), h.decomposition()};
  }

  void set_zero_tol(double z) { ztol_ = z; }

  void process(const PathNode& a, const PathNode& b) {
    const double width = b.t - a.t;
    double rho;
    if (path_.lipschitz()) {
      rho = *path_.lipschitz() * width;
    } else {
      const RVector ev = eigvals_hermitian(0.5 * (b.h - a.h + (b.h - a.h).adjoint()));
      rho = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    }
    const Index n = a.dec.eigenvalues.size();
    Index kmin = n, kmax = -1;
    for (Index k = 0; k < n; ++k) {
      if (std::abs(a.dec.eigenvalues(k)) <= rho + 2 * ztol_ || std::abs(b.dec.eigenvalues(k)) <= rho + 2 * ztol_) {
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
      }
    }
    if (kmax < 0) return;
    const Index lo = std::max<Index>(0, kmin - 1), hi = std::min<Index>(n - 1, kmax + 1);
    const Index m = hi - lo + 1;
    const Matrix ov = a.dec.eigenvectors.middleCols(lo, m).adjoint() * b.dec.eigenvectors.middleCols(lo, m);
    const Eigen::MatrixXd score = ov.cwiseAbs2();
    const std::vector<int> match = best_assignment(score);
    double worst = 1.0;
    bool change = false;
    for (Index i = 0; i < m; ++i) {
      worst = std::min(worst, score(i, match[i]));
      if (nonneg(a.dec.eigenvalues(lo + i)) != nonneg(b.dec.eigenvalues(lo + match[i]))) change = true;
    }
    const bool ambiguous = worst < opts_.overlap_floor;
    if (!change && !ambiguous) return;
    if (width > opts_.tol) {
      ++report.bisections;
      const PathNode mid = node(0.5 * (a.t + b.t));
      process(a, mid);
      process(mid, b);
      return;
    }
    if (ambiguous) {
      // sorted counts settle whether anything crossed at all
      int count_a = 0, count_b = 0;
      for (Index k = lo; k <= hi; ++k) {
        count_a += nonneg(a.dec.eigenvalues(k));
        count_b += nonneg(b.dec.eigenvalues(k));
      }
      if (count_a == count_b && !change) return;
      std::ostringstream os;
      os << "sf_crossings: eigenvector matching is ambiguous on [" << a.t << ", " << b.t
         << "] (worst squared overlap " << worst << ")";
      throw std::runtime_error(os.str());
    }
    for (Index i = 0; i < m; ++i) {
      const Index ia = lo + i, ib = lo + match[i];
      const bool sa = nonneg(a.dec.eigenvalues(ia)), sb = nonneg(b.dec.eigenvalues(ib));
      if (sa == sb) continue;
      Crossing c;
      c.t = 0.5 * (a.t + b.t);
      c.direction = sb ? 1 : -1;
      c.index = ib;
      c.weight = 0.5 * (weight_of(a.dec.eigenvectors.col(ia)) + weight_of(b.dec.eigenvectors.col(ib)));
      report.crossings.push_back(c);
      report.sf += c.direction * c.weight;
    }
  }

  CrossingReport report;

 private:
  bool nonneg(double x) const { return x >= -ztol_; }
  double weight_of(const Vector& v) const { return (weights_.array() * v.array().abs2()).sum(); }

  const OperatorPath& path_;
  RVector weights_;
  CrossingOptions opts_;
  double ztol_ = 0.0;
};

}  // namespace

CrossingReport sf_crossings(const OperatorPath& path, const TraceSpec& tau, const CrossingOptions& opts) {
  if (opts.initial_grid < 1) throw std::invalid_argument("sf_crossings: initial grid must be positive");
  if (!(opts.tol > 0)) throw std::invalid_argument("sf_crossings: tol must be positive");
  CrossingTracker tracker(path, tau, opts);
  PathNode prev = tracker.node(0.0);
  {
    const RVector& ev = prev.dec.eigenvalues;
    const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    tracker.set_zero_tol(opts.zero_tol ? *opts.zero_tol : 1e-10 * norm);
  }
  for (int i = 1; i <= opts.initial_grid; ++i) {
    PathNode cur = tracker.node(static_cast<double>(i) / opts.initial_grid);
    tracker.process(prev, cur);
    prev = std::move(cur);
  }
  std::sort(tracker.report.crossings.begin(), tracker.report.crossings.end(),
            [](const Crossing& x, const Crossing& y) { return x.t < y.t; });
  return tracker.report;
}

static void require_projection(const Matrix& p, const char* who) {
  if (p.rows() != p.cols()) throw std::invalid_argument(std::string(who) + ": projection must be square");
  const double d1 = max_abs(p * p - p), d2 = hermitian_defect(p);
  if (d1 > 1e-8 || d2 > 1e-8) {
    std::ostringstream os;
    os << who << ": input is not a self-adjoint projection (||P^2-P|| = " << d1 << ", ||P-P*|| = " << d2 << ")";
    throw std::domain_error(os.str());
  }
}

double index_pair(const Matrix& p, const Matrix& q, int k, const TraceSpec& tau) {
  require_projection(p, "index_pair");
  require_projection(q, "index_pair");
  if (k < 0) throw std::invalid_argument("index_pair: k must be nonnegative");
  const Matrix x = q - p;
  if (k == 0) return trace(x, tau).real();
  const Matrix x2 = x * x;
  Matrix even = x2;
  for (int i = 1; i < k; ++i) even = even * x2;
  return trace_product(x, even, tau).real();
}

nlohmann::json PartitionReport::to_json() const { return {{"value", value}, {"nodes", nodes}, {"pieces", pieces}}; }

PartitionReport sf_partition(const ProjectionPath& path, const TraceSpec& tau, const PartitionOptions& opts) {
  if (opts.initial_grid < 1) throw std::invalid_argument("sf_partition: initial grid must be positive");
  std::map<double, Matrix> cache;
  auto proj = [&](double t) -> const Matrix& {
    auto it = cache.find(t);
    if (it == cache.end()) it = cache.emplace(t, path(t)).first;
    return it->second;
  };
  PartitionReport rep;
  std::function<void(double, double)> step = [&](double a, double b) {
    const Matrix delta = proj(b) - proj(a);
    const RVector ev = eigvals_hermitian(0.5 * (delta + delta.adjoint()));
    bool honest = true;
    for (Index i = 0; i < ev.size(); ++i) {
      const double x = std::abs(ev(i));
      if (x >= opts.gap_low && x <= 1.0 - opts.gap_eps) honest = false;
    }
    if (!honest) {
      if (b - a <= opts.min_width) {
        std::ostringstream os;
        os << "sf_partition: cannot refine [" << a << ", " << b << "] to a Fredholm-pair step";
        throw std::runtime_error(os.str());
      }
      const double mid = 0.5 * (a + b);
      step(a, mid);
      step(mid, b);
      return;
    }
    const double piece = index_pair(proj(a), proj(b), opts.k, tau);
    rep.nodes.push_back(b);
    rep.pieces.push_back(piece);
    rep.value += piece;
  };
  rep.nodes.push_back(0.0);
  for (int i = 1; i <= opts.initial_grid; ++i)
    step(static_cast<double>(i - 1) / opts.initial_grid, static_cast<double>(i) / opts.initial_grid);
  return rep;
}

PartitionReport sf_partition(const OperatorPath& path, const TraceSpec& tau, const PartitionOptions& opts) {
  const HermitianOperator h0 = path.at(0.0);
  const double ztol = opts.zero_tol ? *opts.zero_tol : default_zero_tol(h0);
  return sf_partition([&path, ztol](double t) { return positive_spectral_projection(path.at(t), ztol); }, tau,
                      opts);
}

static Matrix range_basis(const Matrix& proj) {
  const SpectralDecomposition dec = eig_hermitian_matrix(0.5 * (proj + proj.adjoint()));
  Index first = 0;
  while (first < dec.eigenvalues.size() && dec.eigenvalues(first) < 0.5) ++first;
  return dec.eigenvectors.rightCols(dec.eigenvalues.size() - first);
}

static double weighted_trace_of_range(const Matrix& basis, const RVector& w) {
  return (w.asDiagonal() * basis.cwiseAbs2()).sum();
}

BreuerIndexResult breuer_index(const Matrix& t, const Matrix& domain_proj, const Matrix& codomain_proj,
                               const TraceSpec& tau, double rank_tol) {
  require_projection(domain_proj, "breuer_index");
  require_projection(codomain_proj, "breuer_index");
  BreuerIndexResult out;
  const double tn = operator_norm(t);
  const Index n = t.rows();
  if (tn > 0) out.leakage = operator_norm((identity(n) - codomain_proj) * t * domain_proj) / tn;
  if (out.leakage > 1e-9) {
    std::ostringstream os;
    os << "T moves part of the domain outside the codomain (relative leakage " << out.leakage
       << "); the overflow is discarded, use the pair formula for a truncation-robust index";
    out.warnings.push_back(os.str());
  }
  const Matrix bd = range_basis(domain_proj), bc = range_basis(codomain_proj);
  const RVector w = tau.weights();
  const Matrix tr = bc.adjoint() * t * bd;
  const Index rd = bd.cols(), rc = bc.cols();
  Eigen::JacobiSVD<Matrix> svd(tr, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > rank_tol * smax) ++rank;
  const double kept = rank > 0 ? sv(rank - 1) : 0.0;
  const double dropped = rank < sv.size() ? sv(rank) : 0.0;
  out.gap_ratio = dropped > 0 ? kept / dropped : std::numeric_limits<double>::infinity();
  if (rank > 0 && out.gap_ratio < 10.0)
    out.warnings.push_back("no clear singular-value gap at the rank tolerance (ratio " +
                           std::to_string(out.gap_ratio) + ")");
  const Matrix ker = bd * svd.matrixV().rightCols(rd - rank);
  const Matrix coker = bc * svd.matrixU().rightCols(rc - rank);
  out.kernel_trace = weighted_trace_of_range(ker, w);
  out.cokernel_trace = weighted_trace_of_range(coker, w);
  out.value = out.kernel_trace - out.cokernel_trace;
  return out;
}

ToeplitzIndexResult toeplitz_index(const HermitianOperator& d, const Matrix& u, const TraceSpec& tau,
                                   const ToeplitzIndexOptions& opts) {
  const Index n = d.dim();
  if (max_abs(u.adjoint() * u - identity(n)) > 1e-10) throw std::domain_error("toeplitz_index: u is not unitary");
  ToeplitzIndexResult out;
  const Matrix p = positive_spectral_projection(d, opts.zero_tol);
  out.direct = index_pair(p, u * p * u.adjoint(), opts.k, tau);
  if (std::abs(out.direct - std::round(out.direct)) > 1e-6)
    out.warnings.push_back("pair index " + std::to_string(out.direct) +
                           " is not close to an integer: truncation too small or trace window misplaced");
  if (opts.doubled) {
    if (!(opts.mu > 0)) throw std::invalid_argument("toeplitz_index: doubled route needs mu > 0");
    const DoubledTriple dbl = double_triple(d, {}, opts.mu);
    const Matrix uhat = dbl.hat_unital(u, 1.0);
    const Matrix pm = positive_spectral_projection(dbl.D_mu);
    out.doubled = index_pair(pm, uhat * pm * uhat.adjoint(), opts.k, tau.ampliate(2));
  }
  return out;
}

std::vector<IntegralSample> sf_integral_samples(const HermitianOperator& d, const Matrix& u,
                                                const std::vector<double>& z_list, int t_nodes,
                                                const TraceSpec& tau) {
  for (double z : z_list)
    if (!(z > 0)) throw std::domain_error("sf_integral_samples: z must be positive");
  if (max_abs(u.adjoint() * u - identity(d.dim())) > 1e-10)
    throw std::domain_error("sf_integral_samples: u is not unitary");
  Matrix x = u * commutator(d.matrix(), u.adjoint());
  x = 0.5 * (x + x.adjoint());
  const Matrix wx = tau.weights().cast<cplx>().asDiagonal() * x;
  const QuadratureRule rule = gauss_legendre(t_nodes, 0.0, 1.0);
  std::vector<IntegralSample> out;
  for (double z : z_list) out.push_back({z, 0.0});
  for (size_t q = 0; q < rule.size(); ++q) {
    const SpectralDecomposition dec = eig_hermitian_matrix(d.matrix() + rule.nodes[q] * x);
    const Matrix& v = dec.eigenvectors;
    const Matrix wxv = wx * v;
    Vector dj(v.cols());
    for (Index j = 0; j < v.cols(); ++j) dj(j) = v.col(j).dot(wxv.col(j));
    for (size_t iz = 0; iz < z_list.size(); ++iz) {
      const double e = -0.5 - z_list[iz];
      cplx acc = 0.0;
      for (Index j = 0; j < v.cols(); ++j) acc += dj(j) * std::pow(1.0 + dec.eigenvalues(j) * dec.eigenvalues(j), e);
      out[iz].value += rule.weights[q] * acc;
    }
  }
  return out;
}

}  // namespace sfindex
