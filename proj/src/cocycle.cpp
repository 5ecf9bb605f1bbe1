#include "sfindex/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "sfindex/special.hpp"

namespace sfindex {

cplx eta_constant(int m) {
  if (m < 1 || m % 2 == 0) throw std::invalid_argument("eta_constant: m must be a positive odd integer");
  const cplx root = std::sqrt(cplx(0.0, 2.0));
  return -root * std::pow(2.0, m + 1) * std::exp(std::lgamma(m / 2.0 + 1.0) - std::lgamma(m + 1.0));
}

namespace {

cplx power_neg(double x, cplx c) { return std::exp(-c * std::log(x)); }

// Taylor expansion about the mean: f[x0..xk] = sum_n f^{(k+n)}(x)/(k+n)! h_n(x_i - x).
cplx dd_taylor(const double* x, int k, cplx c) {
  double center = 0.0;
  for (int i = 0; i <= k; ++i) center += x[i];
  center /= (k + 1);
  constexpr int kMax = 96;
  // h[n] for the variables processed so far
  std::vector<double> h(kMax + 1, 0.0);
  h[0] = 1.0;
  for (int i = 0; i <= k; ++i) {
    const double y = x[i] - center;
    for (int n = 1; n <= kMax; ++n) h[n] += y * h[n - 1];
  }
  // coef(j) = binom(-c, j) center^{-c-j}
  cplx coef = power_neg(center, c);
  for (int j = 0; j < k; ++j) coef *= (-c - double(j)) / (double(j + 1) * center);
  cplx sum = 0.0;
  int small = 0;
  for (int n = 0; n <= kMax; ++n) {
    const cplx term = coef * h[n];
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) {
      if (++small >= 2) break;
    } else {
      small = 0;
    }
    const int j = k + n;
    coef *= (-c - double(j)) / (double(j + 1) * center);
  }
  return sum;
}

cplx dd_sorted(const double* x, int k, cplx c) {
  if (k == 0) return power_neg(x[0], c);
  const double spread = x[k] - x[0];
  double center = 0.0;
  for (int i = 0; i <= k; ++i) center += x[i];
  center /= (k + 1);
  if (spread <= 0.1 * center) return dd_taylor(x, k, c);
  return (dd_sorted(x + 1, k - 1, c) - dd_sorted(x, k - 1, c)) / spread;
}

}  // namespace

cplx divided_difference_power(std::vector<double> nodes, cplx c) {
  if (nodes.empty()) throw std::invalid_argument("divided_difference_power: no nodes");
  for (double v : nodes)
    if (!(v > 0) || !std::isfinite(v)) throw std::domain_error("divided_difference_power: nodes must be positive");
  std::sort(nodes.begin(), nodes.end());
  return dd_sorted(nodes.data(), static_cast<int>(nodes.size()) - 1, c);
}

cplx divided_difference_power_lagrange(const std::vector<double>& nodes, cplx c) {
  using lcplx = std::complex<long double>;
  const lcplx cl(c.real(), c.imag());
  lcplx sum = 0;
  for (size_t k = 0; k < nodes.size(); ++k) {
    long double denom = 1;
    for (size_t l = 0; l < nodes.size(); ++l) {
      if (l == k) continue;
      const long double diff = static_cast<long double>(nodes[k]) - static_cast<long double>(nodes[l]);
      if (diff == 0) throw std::domain_error("divided_difference_power_lagrange: repeated node");
      denom *= diff;
    }
    sum += std::exp(-cl * std::log(static_cast<long double>(nodes[k]))) / denom;
  }
  return cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
}

Matrix divided_difference_chain(const std::vector<Matrix>& links, const std::vector<RVector>& nodes, cplx c) {
  if (nodes.size() != links.size() + 1) throw std::invalid_argument("divided_difference_chain: size mismatch");
  const size_t m = links.size();
  for (size_t k = 0; k < m; ++k)
    if (links[k].rows() != nodes[k].size() || links[k].cols() != nodes[k + 1].size())
      throw std::invalid_argument("divided_difference_chain: link shape mismatch");
  const Index n0 = nodes.front().size(), nm = nodes.back().size();
  Matrix out = Matrix::Zero(n0, nm);
  if (m == 0) {
    for (Index j = 0; j < n0; ++j) out(j, j) = power_neg(nodes[0](j), c);
    return out;
  }
  std::vector<double> tuple(m + 1);
  std::vector<double> sorted(m + 1);
  std::function<void(size_t, Index, cplx, Index)> walk = [&](size_t depth, Index j_prev, cplx prod, Index j0) {
    const Matrix& l = links[depth - 1];
    for (Index j = 0; j < l.cols(); ++j) {
      const cplx w = l(j_prev, j);
      if (w == cplx(0.0)) continue;
      const cplx next = prod * w;
      tuple[depth] = nodes[depth](j);
      if (depth == m) {
        std::copy(tuple.begin(), tuple.end(), sorted.begin());
        std::sort(sorted.begin(), sorted.end());
        out(j0, j) += next * dd_sorted(sorted.data(), static_cast<int>(m), c);
      } else {
        walk(depth + 1, j, next, j0);
      }
    }
  };
  for (Index j0 = 0; j0 < n0; ++j0) {
    tuple[0] = nodes[0](j0);
    walk(1, j0, cplx(1.0), j0);
  }
  return out;
}

namespace {

void check_expectation_inputs(const std::vector<Matrix>& A, const HermitianOperator& d,
                              const ExpectationParams& params, const TraceSpec& tau) {
  if (static_cast<int>(A.size()) != params.m + 1)
    throw std::invalid_argument("expectation: expected m+1 = " + std::to_string(params.m + 1) + " operators, got " +
                                std::to_string(A.size()));
  for (const Matrix& a : A)
    if (a.rows() != d.dim() || a.cols() != d.dim()) throw std::invalid_argument("expectation: dimension mismatch");
  if (tau.dim() != d.dim()) throw std::invalid_argument("expectation: trace dimension mismatch");
  if (params.grading && (params.grading->rows() != d.dim() || params.grading->cols() != d.dim()))
    throw std::invalid_argument("expectation: grading dimension mismatch");
}

Matrix weighted_first(const Matrix& a0, const ExpectationParams& params, const TraceSpec& tau) {
  const Matrix ga = params.grading ? Matrix(*params.grading * a0) : a0;
  return tau.weights().cast<cplx>().asDiagonal() * ga;
}

// Shared closed-form evaluation in the eigenbasis of D.
struct EigenFrame {
  RVector lambda2;
  Matrix c;               // V* W gamma A0 V
  std::vector<Matrix> b;  // V* A_k V
};

EigenFrame eigen_frame(const std::vector<Matrix>& A, const HermitianOperator& d, const ExpectationParams& params,
                       const TraceSpec& tau) {
  const SpectralDecomposition& dec = d.decomposition();
  const Matrix& v = dec.eigenvectors;
  EigenFrame f;
  f.lambda2 = dec.eigenvalues.array().square();
  f.c = v.adjoint() * weighted_first(A[0], params, tau) * v;
  for (size_t k = 1; k < A.size(); ++k) f.b.push_back(v.adjoint() * A[k] * v);
  return f;
}

cplx frame_value(const EigenFrame& f, double s, cplx c) {
  const RVector mu = (f.lambda2.array() + 1.0 + s * s).matrix();
  const std::vector<RVector> nodes(f.b.size() + 1, mu);
  const Matrix e = divided_difference_chain(f.b, nodes, c);
  return f.c.transpose().cwiseProduct(e).sum();
}

}  // namespace

cplx expectation_exact(const std::vector<Matrix>& A, const HermitianOperator& d, const ExpectationParams& params,
                       const TraceSpec& tau) {
  check_expectation_inputs(A, d, params, tau);
  const cplx c = params.p / 2.0 + params.r;
  return frame_value(eigen_frame(A, d, params, tau), params.s, c);
}

cplx expectation_naive(const std::vector<Matrix>& A, const HermitianOperator& d, const ExpectationParams& params,
                       const TraceSpec& tau) {
  check_expectation_inputs(A, d, params, tau);
  const cplx c = params.p / 2.0 + params.r;
  const EigenFrame f = eigen_frame(A, d, params, tau);
  const Index n = d.dim();
  const int m = params.m;
  std::vector<Index> idx(m + 1, 0);
  std::vector<double> nodes(m + 1);
  cplx total = 0.0;
  while (true) {
    cplx prod = f.c(idx[m], idx[0]);
    for (int k = 1; k <= m; ++k) prod *= f.b[k - 1](idx[k - 1], idx[k]);
    for (int k = 0; k <= m; ++k) nodes[k] = 1.0 + params.s * params.s + f.lambda2(idx[k]);
    std::vector<double> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    total += prod * (distinct ? divided_difference_power_lagrange(nodes, c) : divided_difference_power(nodes, c));
    int pos = 0;
    while (pos <= m && ++idx[pos] == n) idx[pos++] = 0;
    if (pos > m) break;
  }
  return total;
}

QuadResult expectation_quadrature(const std::vector<Matrix>& A, const HermitianOperator& d,
                                  const ExpectationParams& params, const TraceSpec& tau, double height, int nodes,
                                  bool tail_correction) {
  check_expectation_inputs(A, d, params, tau);
  if (!(height > 0)) throw std::invalid_argument("expectation_quadrature: height must be positive");
  if (nodes < 4 || nodes % 2) throw std::invalid_argument("expectation_quadrature: nodes must be even and >= 4");
  if (!(params.a > 0 && params.a < 0.5)) throw std::invalid_argument("expectation_quadrature: need 0 < a < 1/2");
  const cplx c = params.p / 2.0 + params.r;
  const Index n = d.dim();
  const int m = params.m;
  const Matrix first = weighted_first(A[0], params, tau);
  const Matrix shifted = (1.0 + params.s * params.s) * identity(n) + d.matrix() * d.matrix();

  auto integrand = [&](cplx lambda) {
    const Matrix res = (lambda * identity(n) - shifted).partialPivLu().inverse();
    Matrix acc = first * res;
    for (int k = 1; k <= m; ++k) acc = acc * A[k] * res;
    return std::exp(-c * std::log(lambda)) * acc.trace();
  };

  // trapezoid in w, Im lambda = sinh w; the coarse sum is every other node
  const double wmax = std::asinh(height);
  const double h = 2.0 * wmax / nodes;
  cplx fine = 0.0, coarse = 0.0;
  for (int k = 0; k <= nodes; ++k) {
    const double w = -wmax + k * h;
    const double edge = (k == 0 || k == nodes) ? 0.5 : 1.0;
    const cplx val = integrand(cplx(params.a, std::sinh(w))) * std::cosh(w);
    fine += edge * val;
    if (k % 2 == 0) coarse += ((k == 0 || k == nodes) ? 0.5 : 1.0) * val;
  }
  // (1/2 pi i) times the downward line integral
  fine *= -h / (2.0 * kPi);
  coarse *= -2.0 * h / (2.0 * kPi);

  cplx tail = 0.0;
  if (tail_correction) {
    // lambda^{-c} sum_n lambda^{-(m+1)-n} T_n with T_n = sum over n0+..+nm = n of
    // tr(W gamma A0 M^{n0} A1 M^{n1} ... Am M^{nm}), M = shifted
    constexpr int kTerms = 5;
    std::vector<Matrix> mpow(kTerms, identity(n));
    for (int j = 1; j < kTerms; ++j) mpow[j] = mpow[j - 1] * shifted;
    std::vector<Matrix> level(kTerms);
    for (int j = 0; j < kTerms; ++j) level[j] = first * mpow[j];
    for (int k = 1; k <= m; ++k) {
      std::vector<Matrix> next(kTerms, Matrix::Zero(n, n));
      for (int j = 0; j < kTerms; ++j)
        for (int i = 0; i <= j; ++i) next[j] += level[i] * A[k] * mpow[j - i];
      level = std::move(next);
    }
    const cplx top(params.a, height), bottom(params.a, -height);
    for (int j = 0; j < kTerms; ++j) {
      const cplx beta = c + double(m + 1 + j);
      const cplx piece = (std::exp((1.0 - beta) * std::log(top)) - std::exp((1.0 - beta) * std::log(bottom))) /
                         (1.0 - beta);
      tail += level[j].trace() * piece;
    }
    tail /= 2.0 * kPi * kI;
  }
  QuadResult out;
  out.value = fine + tail;
  out.error = std::abs(fine - coarse);
  out.evaluations = nodes + 1;
  out.converged = true;
  return out;
}

nlohmann::json ChernChain::to_json() const {
  nlohmann::json ts = nlohmann::json::array();
  for (const Term& t : terms) {
    nlohmann::json fs = nlohmann::json::array();
    for (const Matrix& f : t.factors) fs.push_back(matrix_to_json(f));
    ts.push_back({{"coefficient", {t.coefficient.real(), t.coefficient.imag()}}, {"factors", fs}});
  }
  return {{"degree", degree}, {"terms", ts}};
}

ChernChain chern_character(const Matrix& u, int m, Index n_blocks) {
  if (m < 1 || m % 2 == 0) throw std::invalid_argument("chern_character: degree must be odd");
  if (n_blocks < 1 || u.rows() % n_blocks || u.rows() != u.cols())
    throw std::invalid_argument("chern_character: block count must divide the dimension");
  const int j = (m - 1) / 2;
  double fact = 1.0;
  for (int i = 2; i <= j; ++i) fact *= i;
  const cplx coef = (j % 2 ? -1.0 : 1.0) * fact;
  const Index b = u.rows() / n_blocks;
  const Matrix ustar = u.adjoint();
  ChernChain out;
  out.degree = m;
  std::vector<Index> idx(m + 1, 0);
  while (true) {
    ChernChain::Term t;
    t.coefficient = coef;
    for (int k = 0; k <= m; ++k) {
      const Matrix& src = (k % 2 == 0) ? ustar : u;
      const Index row = idx[k], col = idx[(k + 1) % (m + 1)];
      t.factors.push_back(src.block(row * b, col * b, b, b));
    }
    out.terms.push_back(std::move(t));
    int pos = 0;
    while (pos <= m && ++idx[pos] == n_blocks) idx[pos++] = 0;
    if (pos > m) break;
  }
  return out;
}

namespace {

CocycleValue integrate_theta(const std::function<cplx(double)>& integrand_s, const CocycleQuadrature& quad) {
  auto run = [&](int n) {
    const QuadratureRule rule = gauss_legendre(n, 0.0, kPi / 2.0);
    cplx sum = 0.0;
    for (size_t k = 0; k < rule.size(); ++k) {
      const double th = rule.nodes[k];
      const double s = std::tan(th);
      const double sec = 1.0 / std::cos(th);
      sum += rule.weights[k] * integrand_s(s) * sec * sec;
    }
    return sum;
  };
  CocycleValue out;
  int n = quad.initial_nodes;
  cplx prev = run(n);
  while (true) {
    const int next_n = 2 * n;
    if (next_n > quad.max_nodes) {
      out.value = prev;
      out.nodes = n;
      out.converged = false;
      break;
    }
    const cplx cur = run(next_n);
    out.error = std::abs(cur - prev);
    out.value = cur;
    out.nodes = next_n;
    n = next_n;
    if (out.error <= quad.rel_tol * std::abs(cur) || std::abs(cur) == 0.0) {
      out.converged = true;
      break;
    }
    prev = cur;
  }
  return out;
}

}  // namespace

CocycleValue phi_m_r(const std::vector<Matrix>& a, const HermitianOperator& d, cplx r, double p,
                     const TraceSpec& tau, const CocycleQuadrature& quad) {
  const int m = static_cast<int>(a.size()) - 1;
  if (m < 1 || m % 2 == 0) throw std::invalid_argument("phi_m_r: needs an odd number m of commutator slots");
  if (!(r.real() > (1.0 - m) / 2.0))
    throw std::domain_error("phi_m_r: requires Re r > (1-m)/2 = " + std::to_string((1.0 - m) / 2.0));
  std::vector<Matrix> args{a[0]};
  for (int k = 1; k <= m; ++k) args.push_back(commutator(d.matrix(), a[k]));
  ExpectationParams params;
  params.m = m;
  params.r = r;
  params.p = p;
  const EigenFrame frame = eigen_frame(args, d, params, tau);
  const cplx c = p / 2.0 + r;
  CocycleValue v = integrate_theta([&](double s) { return std::pow(s, m) * frame_value(frame, s, c); }, quad);
  const cplx eta = eta_constant(m);
  v.value *= eta;
  v.error *= std::abs(eta);
  return v;
}

CocycleValue phi_m_r(const ChernChain& chain, const HermitianOperator& d, cplx r, double p, const TraceSpec& tau,
                     const CocycleQuadrature& quad) {
  CocycleValue total;
  total.value = 0.0;
  total.converged = true;
  for (const ChernChain::Term& t : chain.terms) {
    if (static_cast<int>(t.factors.size()) != chain.degree + 1)
      throw std::invalid_argument("phi_m_r: chain term has the wrong number of factors");
    const CocycleValue v = phi_m_r(t.factors, d, r, p, tau, quad);
    total.value += t.coefficient * v.value;
    total.error += std::abs(t.coefficient) * v.error;
    total.nodes = std::max(total.nodes, v.nodes);
    total.converged = total.converged && v.converged;
  }
  return total;
}

CocycleValue pair_with_chern(const Matrix& u, const HermitianOperator& d, double p, cplx r, const TraceSpec& tau,
                             const CocycleQuadrature& quad) {
  if (!(r.real() > 0)) throw std::domain_error("pair_with_chern: requires Re r > 0");
  const int big_m = 2 * static_cast<int>(std::floor(p / 2.0)) + 1;
  CocycleValue total;
  total.value = 0.0;
  total.converged = true;
  const Matrix ustar = u.adjoint();
  for (int m = 1; m <= big_m; m += 2) {
    const CocycleValue a = phi_m_r(chern_character(u, m), d, r, p, tau, quad);
    const CocycleValue b = phi_m_r(chern_character(ustar, m), d, r, p, tau, quad);
    total.value += a.value - b.value;
    total.error += a.error + b.error;
    total.nodes = std::max({total.nodes, a.nodes, b.nodes});
    total.converged = total.converged && a.converged && b.converged;
  }
  const cplx factor = -0.5 / std::sqrt(2.0 * kPi * kI);
  total.value *= factor;
  total.error *= std::abs(factor);
  return total;
}

Matrix ResolventExpansion::sum() const {
  Matrix out = remainder;
  for (const Matrix& t : terms) out += t;
  return out;
}

ResolventExpansion resolvent_expansion(const HermitianOperator& h, const Matrix& q, double s, cplx r, double p,
                                       int order) {
  if (order < 0) throw std::invalid_argument("resolvent_expansion: order must be nonnegative");
  const Index n = h.dim();
  const cplx c = p / 2.0 + r;
  const Matrix b = anticommutator(h.matrix(), q);
  const SpectralDecomposition& dec = h.decomposition();
  const Matrix& v = dec.eigenvectors;
  const RVector mu = (dec.eigenvalues.array().square() + 1.0 + s * s).matrix();
  const Matrix qv = v.adjoint() * q * v;
  const Matrix bv = v.adjoint() * b * v;

  ResolventExpansion out;
  for (int m = 0; m <= order; ++m) {
    const std::vector<Matrix> links(m, bv);
    const std::vector<RVector> nodes(m + 1, mu);
    out.terms.push_back(std::pow(s, m) * (v * (qv * divided_difference_chain(links, nodes, c)) * v.adjoint()));
  }
  // perturbed resolvent (lambda - (1 + s^2 + H^2 + sB))^{-1}
  const HermitianOperator k((1.0 + s * s) * identity(n) + h.matrix() * h.matrix() + s * b, 1e-9);
  const SpectralDecomposition& kdec = k.decomposition();
  std::vector<Matrix> links(order, bv);
  links.push_back(v.adjoint() * b * kdec.eigenvectors);
  std::vector<RVector> nodes(order + 1, mu);
  nodes.push_back(kdec.eigenvalues);
  out.remainder = std::pow(s, order + 1) *
                  (v * (qv * divided_difference_chain(links, nodes, c)) * kdec.eigenvectors.adjoint());
  const HermitianOperator hs(h.matrix() + s * q, 1e-9);
  out.target = q * apply_spectral_function(hs, [c](double x) { return std::exp(-c * std::log1p(x * x)); });
  return out;
}

}  // namespace sfindex
