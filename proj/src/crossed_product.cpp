#include "sfindex/crossed_product.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sfindex/random.hpp"
#include "sfindex/special.hpp"
#include "sfindex/spectral_flow.hpp"

namespace sfindex {

Profile profile_from_name(const std::string& name) {
  if (name == "smoothstep") return Profile::Smoothstep;
  if (name == "fourier") return Profile::Fourier;
  throw std::invalid_argument("unknown profile '" + name + "' (expected smoothstep or fourier)");
}

std::string profile_name(Profile p) { return p == Profile::Smoothstep ? "smoothstep" : "fourier"; }

namespace {

// Coefficients c(m) = (1/N) sum_j f_j e^{-2 pi i m j / N}, stored by m mod N.
Vector dft(const Vector& f) {
  const Index n = f.size();
  Vector tw(n);
  for (Index r = 0; r < n; ++r) tw(r) = std::polar(1.0, -2.0 * kPi * static_cast<double>(r) / static_cast<double>(n));
  Vector c = Vector::Zero(n);
  for (Index m = 0; m < n; ++m) {
    cplx acc = 0.0;
    for (Index j = 0; j < n; ++j) acc += f(j) * tw((m * j) % n);
    c(m) = acc / static_cast<double>(n);
  }
  return c;
}

Vector idft(const Vector& c) {
  const Index n = c.size();
  Vector tw(n);
  for (Index r = 0; r < n; ++r) tw(r) = std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(n));
  Vector f = Vector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    cplx acc = 0.0;
    for (Index m = 0; m < n; ++m) acc += c(m) * tw((m * j) % n);
    f(j) = acc;
  }
  return f;
}

// Signed frequency of the DFT slot r.
Index signed_mode(Index r, Index n) { return r < n / 2 ? r : r - n; }

// C-infinity monotone step f(t) / (f(t) + f(1 - t)) with f(t) = exp(-1/t). Its
// Fourier tail decays faster than any power, unlike polynomial smoothsteps.
double bump_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return 1.0 / (1.0 + std::exp(1.0 / t - 1.0 / (1.0 - t)));
}

double bump_step_prime(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double e = std::exp(1.0 / t - 1.0 / (1.0 - t));
  if (!std::isfinite(e)) return 0.0;
  const double s = 1.0 / (1.0 + e);
  return s * (1.0 - s) * (1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t)));
}

}  // namespace

SymbolFunction SymbolFunction::from_samples(const Vector& values, double L) {
  const Index n = values.size();
  Vector c = dft(values);
  for (Index r = 0; r < n; ++r) {
    const Index m = signed_mode(r, n);
    c(r) *= (m == -n / 2) ? cplx(0.0) : kI * (2.0 * kPi * static_cast<double>(m) / L);
  }
  return {values, idft(c), L};
}

Matrix CrossedProductModel::multiplication(const Vector& a) const {
  const Index n = dim();
  if (a.size() != n) throw std::invalid_argument("multiplication: sample count must equal N");
  const Vector c = dft(a);
  Matrix m(n, n);
  for (Index col = 0; col < n; ++col)
    for (Index row = 0; row < n; ++row) m(row, col) = c(((row - col) % n + n) % n);
  return m;
}

Index CrossedProductModel::window_half() const {
  return std::clamp<Index>(static_cast<Index>(std::llround(params.window * params.N)), 1, params.N / 2);
}

TraceSpec CrossedProductModel::trace_spec() const {
  const Index n = dim();
  const Index h = window_half();
  std::vector<TraceSpec::Block> blocks;
  if (n / 2 - h > 0) blocks.push_back({n / 2 - h, 0.0});
  blocks.push_back({2 * h, tau_const});
  if (n / 2 - h > 0) blocks.push_back({n / 2 - h, 0.0});
  return TraceSpec(blocks);
}

TraceSpec CrossedProductModel::full_trace_spec() const { return TraceSpec::uniform(dim(), tau_const); }

std::vector<double> CrossedProductModel::window_cutoffs() const {
  const double h = static_cast<double>(window_half());
  return {(h - 0.5) / params.L, (h + 0.5) / params.L};
}

CrossedProductModel build_model(const ModelParams& params) {
  if (params.N < 8 || params.N % 2 != 0) throw std::invalid_argument("build_model: N must be even and >= 8");
  if (!(params.L > 0)) throw std::invalid_argument("build_model: L must be positive");
  if (!(params.window > 0 && params.window <= 0.5))
    throw std::invalid_argument("build_model: window fraction must lie in (0, 1/2]");
  CrossedProductModel m;
  m.params = params;
  const Index n = params.N;
  const double L = params.L;
  const double wnd = params.winding;
  m.x.resize(n);
  m.k.resize(n);
  m.g.resize(n);
  m.g_prime.resize(n);
  for (Index j = 0; j < n; ++j) {
    m.x(j) = L * static_cast<double>(j) / static_cast<double>(n);
    m.k(j) = static_cast<int>(j - n / 2);
  }

  if (params.profile == Profile::Smoothstep) {
    for (Index j = 0; j < n; ++j) {
      const double t = std::clamp((m.x(j) - L / 4.0) / (L / 2.0), 0.0, 1.0);
      m.g(j) = wnd * bump_step(t);
      m.g_prime(j) = wnd * bump_step_prime(t) / (L / 2.0);
    }
  } else {
    if (!(params.sigma >= 0)) throw std::invalid_argument("build_model: sigma must be nonnegative");
    Rng rng(params.seed);
    const Index modes = std::max<Index>(1, n / 8);
    std::vector<double> a(modes + 1), b(modes + 1);
    for (Index q = 1; q <= modes; ++q) {
      const double kq = 2.0 * kPi * static_cast<double>(q) / L;
      const double filter = std::exp(-0.5 * kq * kq * params.sigma * params.sigma);
      a[q] = params.amplitude * filter * rng.normal();
      b[q] = params.amplitude * filter * rng.normal();
    }
    for (Index j = 0; j < n; ++j) {
      double g = wnd * m.x(j) / L, gp = wnd / L;
      for (Index q = 1; q <= modes; ++q) {
        const double kq = 2.0 * kPi * static_cast<double>(q) / L;
        g += a[q] * std::cos(kq * m.x(j)) + b[q] * std::sin(kq * m.x(j));
        gp += kq * (-a[q] * std::sin(kq * m.x(j)) + b[q] * std::cos(kq * m.x(j)));
      }
      m.g(j) = g;
      m.g_prime(j) = gp;
    }
  }

  Vector values(n), deriv(n);
  for (Index j = 0; j < n; ++j) {
    values(j) = std::polar(1.0, 2.0 * kPi * m.g(j));
    deriv(j) = 2.0 * kPi * kI * m.g_prime(j) * values(j);
  }
  m.symbol = {values, deriv, L};

  const Vector c = dft(values);
  double total = 0.0, high = 0.0;
  for (Index r = 0; r < n; ++r) {
    const double p = std::norm(c(r));
    total += p;
    if (std::abs(signed_mode(r, n)) >= n / 4) high += p;
  }
  m.tail = std::sqrt(high / total);
  if (m.tail > params.tail_limit) {
    std::ostringstream os;
    os << "build_model: symbol is under-resolved, high-frequency fraction " << m.tail << " exceeds "
       << params.tail_limit << "; increase N or use a smoother profile";
    throw std::domain_error(os.str());
  }

  RVector d(n);
  for (Index j = 0; j < n; ++j) d(j) = static_cast<double>(m.k(j)) / L;
  m.D = HermitianOperator::diagonal(d);
  m.u = m.multiplication(values);
  m.tau_const = 1.0;
  m.mu = params.mu > 0 ? params.mu : 1.0 / (2.0 * L);

  // [D, u] against multiplication by g' u, on the modes |k| < N/4 where no
  // difference of momenta wraps around.
  const Matrix gu = m.multiplication((m.g_prime.cast<cplx>().array() * values.array()).matrix());
  const Index lo = n / 2 - n / 4, len = 2 * (n / 4);
  double err = 0.0;
  for (Index col = lo; col < lo + len; ++col)
    for (Index row = lo; row < lo + len; ++row)
      err = std::max(err, std::abs((d(row) - d(col)) * m.u(row, col) - gu(row, col)));
  m.derivative_error = err;
  return m;
}

WindingResult winding_number(const SymbolFunction& u, double tau_normalization) {
  if (u.values.size() != u.derivative.size() || u.values.size() == 0)
    throw std::invalid_argument("winding_number: samples and derivative must be nonempty and of equal length");
  WindingResult out;
  cplx acc = 0.0;
  double floor = INFINITY, unit_defect = 0.0;
  for (Index j = 0; j < u.size(); ++j) {
    const double mod = std::abs(u.values(j));
    floor = std::min(floor, mod);
    unit_defect = std::max(unit_defect, std::abs(mod - 1.0));
    acc += u.derivative(j) / u.values(j);
  }
  acc *= u.step() * tau_normalization / (2.0 * kPi * kI);
  out.value = acc.real();
  out.imag_part = acc.imag();
  if (floor < 1e-3)
    out.warnings.push_back("symbol nearly vanishes (min |u| = " + std::to_string(floor) +
                           "); the winding number is ill-conditioned");
  if (unit_defect > 1e-8 && floor >= 1e-3)
    out.warnings.push_back("symbol is not unitary; u^{-1} u' used in place of u* u'");
  return out;
}

cplx calibrated_trace(const CrossedProductModel& model, const Matrix& t) {
  return trace(t, model.full_trace_spec());
}

Report factorization_check(const CrossedProductModel& model, const SymbolFunction& a, double s, double tol) {
  if (!(s > 1)) throw std::domain_error("factorization_check: s must exceed 1");
  if (a.size() != model.dim()) throw std::invalid_argument("factorization_check: sample count must equal N");
  Report r("factorization", "trace factorization over the circle");
  r.inputs = {{"N", model.params.N}, {"L", model.params.L}, {"s", s}};
  Matrix t = model.multiplication(a.values);
  const RVector& d = model.D.matrix().diagonal().real();
  for (Index c = 0; c < t.cols(); ++c) t.col(c) *= std::pow(1.0 + d(c) * d(c), -0.5 * s);
  const cplx disc = calibrated_trace(model, t);
  const cplx tau_a = a.values.sum() * a.step();
  if (std::abs(tau_a) < 1e-12) throw std::domain_error("factorization_check: tau(a) vanishes");
  const double line = resolvent_line_integral(s);
  const cplx ratio = disc / (tau_a * line);
  r.record("discrete trace", disc.real());
  r.record("continuum value", (tau_a * line).real());
  r.expect_close("relative deviation", std::abs(ratio - 1.0), 0.0, tol, Source::Exact);
  return r;
}

Report izza_residue_check(const CrossedProductModel& model, const SymbolFunction& e, const IzzaOptions& opts) {
  const Index n = model.dim();
  if (e.size() != n) throw std::invalid_argument("izza_residue_check: sample count must equal N");
  for (Index j = 0; j < n; ++j)
    if (std::abs(e.values(j)) < 1e-8) throw std::domain_error("izza_residue_check: e is not invertible");
  Report r("izza-residue", "residue of the truncated index integrand at s = 1");
  r.inputs = {{"N", model.params.N}, {"L", model.params.L}, {"winding", model.params.winding},
              {"s_grid", opts.s_grid}, {"fit_degree", opts.fit_degree}};

  const Matrix E = model.multiplication(e.values);
  const Matrix Einv = model.multiplication(e.values.cwiseInverse());
  const RVector d = model.D.matrix().diagonal().real();
  const RVector w = model.trace_spec().weights();
  // diagonal of e^{-1}[D, e]
  Vector diag = Vector::Zero(n);
  for (Index k = 0; k < n; ++k) {
    if (w(k) == 0.0) continue;
    cplx acc = 0.0;
    for (Index q = 0; q < n; ++q) acc += Einv(k, q) * E(q, k) * (d(q) - d(k));
    diag(k) = acc;
  }
  std::vector<double> ws, gs;
  for (double s : opts.s_grid) {
    if (!(s > 1)) throw std::domain_error("izza_residue_check: every s must exceed 1");
    cplx acc = 0.0;
    for (Index k = 0; k < n; ++k) acc += w(k) * diag(k) * std::pow(1.0 + d(k) * d(k), -0.5 * s);
    ws.push_back(s - 1.0);
    gs.push_back(0.5 * acc.real());
  }
  ResidueOptions ro;
  ro.fit_degree = opts.fit_degree;
  ro.cutoff = CutoffModel{model.window_cutoffs(), 1.0};
  const ResidueFit fit = residue_extrapolate(ws, gs, ro);
  const cplx wind = (e.derivative.array() / e.values.array()).sum() * e.step() / (2.0 * kPi * kI);
  r.data["fit"] = fit.to_json();
  r.record("winding", wind.real());
  r.expect_close("residue", fit.residue, wind.real(), opts.tol, Source::Published, std::max(1.0, std::abs(wind.real())));
  return r;
}

ResidueFit integral_residue(const CrossedProductModel& model, const std::vector<double>& z,
                            const std::vector<double>& f, int fit_degree) {
  ResidueOptions ro;
  ro.fit_degree = fit_degree;
  ro.cutoff = CutoffModel{model.window_cutoffs(), 2.0};
  return residue_extrapolate(z, f, ro);
}

Report pr_index_experiment(const CrossedProductModel& model, const PrExperimentOptions& opts) {
  const int n = model.params.winding;
  const double scale = std::max(1, std::abs(n));
  Report r("pr-index", "index of the Toeplitz pair against the winding number");
  r.inputs = {{"N", model.params.N}, {"L", model.params.L}, {"winding", n},
              {"profile", profile_name(model.params.profile)}, {"mu", model.mu}};
  const TraceSpec tau = model.trace_spec();
  nlohmann::json engines = nlohmann::json::object();

  const WindingResult wr = winding_number(model.symbol, model.tau_const);
  for (const auto& w : wr.warnings) r.notes.push_back(w);
  r.expect_close("winding number", wr.value, n, 1e-6, Source::Exact);
  engines["winding"] = wr.value;

  ToeplitzIndexOptions to;
  to.doubled = true;
  to.mu = model.mu;
  const ToeplitzIndexResult ti = toeplitz_index(model.D, model.u, tau, to);
  for (const auto& w : ti.warnings) r.notes.push_back(w);
  r.expect_close("pair index", ti.direct, -n, 1e-6, Source::Published);
  r.expect_close("doubled pair index", *ti.doubled, ti.direct, 1e-6, Source::Exact);
  r.expect_true("doubled route integer agrees", std::lround(*ti.doubled) == std::lround(ti.direct), Source::Exact);
  engines["pair"] = ti.direct;
  engines["doubled"] = *ti.doubled;

  if (opts.run_crossings) {
    CrossingOptions co;
    co.initial_grid = opts.sf_grid;
    const CrossingReport cr = sf_crossings(OperatorPath::straight_line(model.D, model.u), tau, co);
    r.expect_close("crossing count", cr.sf, -n, 1e-6, Source::Published);
    r.data["crossings"] = cr.to_json();
    engines["crossings"] = cr.sf;
  }

  if (opts.run_integral) {
    const std::vector<double> z = opts.z_grid.empty() ? log_spaced(0.05, 0.5, 8) : opts.z_grid;
    const auto samples = sf_integral_samples(model.D, model.u, z, opts.t_nodes, tau);
    std::vector<double> f;
    for (const auto& s : samples) f.push_back(s.value.real());
    const ResidueFit fit = integral_residue(model, z, f, opts.fit_degree);
    r.data["integral_fit"] = fit.to_json();
    r.expect_close("integral residue", fit.residue, -n, opts.integral_tol, Source::Published, scale);
    engines["integral"] = fit.residue;
  }

  nlohmann::json agreement = nlohmann::json::object();
  for (auto a = engines.begin(); a != engines.end(); ++a)
    for (auto b = std::next(a); b != engines.end(); ++b) {
      double va = a.value().get<double>(), vb = b.value().get<double>();
      if (a.key() == "winding") va = -va;
      if (b.key() == "winding") vb = -vb;
      agreement[a.key() + "/" + b.key()] = std::abs(va - vb);
    }
  r.data["engines"] = engines;
  r.data["agreement"] = agreement;
  return r;
}

}  // namespace sfindex
