// Acceptance run: one PASS/FAIL line per criterion. Optional arguments select
// criteria by number, e.g. `sfindex_acceptance 1 4`.

#include <mpfr.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>

#include "sfindex/cocycle.hpp"
#include "sfindex/config.hpp"
#include "sfindex/crossed_product.hpp"
#include "sfindex/harness.hpp"
#include "sfindex/random.hpp"
#include "sfindex/residue.hpp"
#include "sfindex/spectral_flow.hpp"
#include "sfindex/special.hpp"

using namespace sfindex;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  Outcome() { detail << std::setprecision(12); }
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

bool is_integer(double v, double tol = 1e-6) { return std::abs(v - std::round(v)) <= tol; }

Outcome toeplitz_vs_winding() {
  Outcome o;
  for (int n : {1, 2, 3}) {
    const auto t0 = Clock::now();
    ModelParams p;
    p.N = 1024;
    p.winding = n;
    const CrossedProductModel m = build_model(p);
    const double w = winding_number(m.symbol).value;
    ToeplitzIndexOptions opts;
    opts.doubled = true;
    opts.mu = m.mu;
    const ToeplitzIndexResult t = toeplitz_index(m.D, m.u, m.trace_spec(), opts);
    const double secs = seconds_since(t0);
    o.detail << " n=" << n << ": winding " << w << ", pair " << t.direct << ", doubled " << *t.doubled << ", "
             << secs << " s;";
    o.require(std::abs(w - n) <= 1e-6, "winding n=" + std::to_string(n));
    o.require(std::abs(t.direct + n) <= 1e-6, "pair index n=" + std::to_string(n));
    o.require(std::lround(t.direct) == std::lround(*t.doubled) && is_integer(*t.doubled) &&
                  std::abs(t.direct - *t.doubled) <= 1e-9,
              "doubled route n=" + std::to_string(n));
    o.require(secs <= 120.0, "runtime n=" + std::to_string(n));
  }
  return o;
}

Outcome residue_at_one() {
  Outcome o;
  for (int n : {1, 2}) {
    ModelParams p;
    p.N = 1024;
    p.winding = n;
    const CrossedProductModel m = build_model(p);
    const Report r = izza_residue_check(m, m.symbol);
    double residue = 0.0, wind = 0.0;
    for (const auto& mt : r.metrics) {
      if (mt.name == "residue") residue = mt.value;
      if (mt.name == "winding") wind = mt.value;
    }
    o.detail << " n=" << n << ": residue " << residue << " vs " << wind << ";";
    o.require(std::abs(residue - wind) <= 0.02 * std::abs(wind) && std::abs(wind - n) <= 1e-6,
              "residue n=" + std::to_string(n));
  }
  const std::vector<double> w = log_spaced(0.05, 0.5, 8);
  std::vector<double> f;
  for (double x : w) f.push_back(resolvent_line_integral(1.0 + x));
  ResidueOptions ro;
  ro.fit_degree = IzzaOptions{}.fit_degree;
  const double scalar = residue_extrapolate(w, f, ro).residue;
  o.detail << " scalar residue " << scalar << ";";
  o.require(std::abs(scalar - 2.0) <= 1e-4, "scalar residue");
  return o;
}

Outcome integral_formula() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::vector<double> z = log_spaced(0.05, 0.5, 8);
  double previous = INFINITY, last = 0.0;
  for (int N : {512, 1024, 2048}) {
    const auto t1 = Clock::now();
    ModelParams p;
    p.N = N;
    p.winding = 1;
    const CrossedProductModel m = build_model(p);
    const auto samples = sf_integral_samples(m.D, m.u, z, PrExperimentOptions{}.t_nodes, m.trace_spec());
    std::vector<double> f;
    for (const auto& s : samples) f.push_back(s.value.real());
    last = integral_residue(m, z, f, PrExperimentOptions{}.fit_degree).residue;
    const double err = std::abs(last + 1.0);
    o.detail << " N=" << N << ": residue " << last << " (error " << err << ", " << seconds_since(t1) << " s);";
    o.require(err < previous, "monotone improvement at N=" + std::to_string(N));
    previous = err;
  }
  const double secs = seconds_since(t0);
  o.require(std::abs(last + 1.0) <= 0.1, "residue at N=2048");
  o.require(secs <= 900.0, "runtime");
  return o;
}

Outcome engine_agreement() {
  Outcome o;
  for (int N : {256, 512})
    for (int n = -2; n <= 2; ++n) {
      ModelParams p;
      p.N = N;
      p.winding = n;
      const CrossedProductModel m = build_model(p);
      const OperatorPath path = OperatorPath::straight_line(m.D, m.u);
      const double cross = sf_crossings(path, m.trace_spec()).sf;
      const double part = sf_partition(path, m.trace_spec()).value;
      const double pair = toeplitz_index(m.D, m.u, m.trace_spec()).direct;
      o.detail << " (" << N << "," << n << "): " << cross << "/" << std::round(part) << "/" << std::round(pair) << ";";
      const bool ints = is_integer(cross) && is_integer(part) && is_integer(pair);
      const long c = std::lround(cross);
      o.require(ints && c == std::lround(part) && c == std::lround(pair) && c == -n,
                "N=" + std::to_string(N) + " n=" + std::to_string(n));
    }
  return o;
}

Outcome identity_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  RunConfig c;
  c.set("run.seed", "1");
  c.set("check.seeds", "10");
  c.set("check.dims", "2,4,6");
  c.set("check.r", "0.3,1.0");
  c.set("check.p", "1");
  c.set("check.nodes", "64");
  const SuiteResult s = run_suite("identities", c);
  const double secs = seconds_since(t0);
  o.detail << " " << s.pass_count() << "/" << s.reports.size() << " reports pass in " << secs << " s;";
  for (const Report& r : s.reports)
    if (!r.passed()) o.detail << " failing " << r.check << " seed " << r.inputs.value("seed", 0) << ";";
  o.require(s.passed() && s.reports.size() == 120, "identity reports");
  o.require(secs <= 180.0, "runtime");
  return o;
}

double mpfr_two_sqrt_pi() {
  mpfr_t v;
  mpfr_init2(v, 256);
  mpfr_const_pi(v, MPFR_RNDN);
  mpfr_sqrt(v, v, MPFR_RNDN);
  mpfr_mul_ui(v, v, 2, MPFR_RNDN);
  const double out = mpfr_get_d(v, MPFR_RNDN);
  mpfr_clear(v);
  return out;
}

Outcome cocycle_cross_validation() {
  Outcome o;
  Rng rng(2024);
  const int ms[] = {0, 1, 3};
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int m = ms[i % 3];
    const Index dim = 2 + (i % 7);
    const HermitianOperator d(1.5 * random_hermitian(rng, dim).matrix());
    std::vector<Matrix> a;
    for (int k = 0; k <= m; ++k) a.push_back(random_complex(rng, dim, dim));
    ExpectationParams prm;
    prm.m = m;
    prm.r = cplx(0.3 + 1.2 * rng.uniform(), 0.2 * rng.normal());
    prm.s = 0.2 + 1.3 * rng.uniform();
    const TraceSpec tau = TraceSpec::uniform(dim);
    const cplx exact = expectation_exact(a, d, prm, tau);
    const double height = 200.0 * (1.0 + prm.s * prm.s + d.norm() * d.norm());
    const QuadResult q = expectation_quadrature(a, d, prm, tau, height, 4000);
    const double rel = std::abs(q.value - exact) / std::abs(exact);
    worst = std::max(worst, rel);
    o.require(rel <= 1e-6, "instance " + std::to_string(i) + " (m=" + std::to_string(m) + ")");
  }
  const cplx eta = eta_constant(1);
  const double ref = -mpfr_two_sqrt_pi();
  const double eta_err = std::max(std::abs(eta.real() - ref), std::abs(eta.imag() - ref));
  o.detail << " worst relative gap " << worst << " over 20 instances; eta_1 error " << eta_err << ";";
  o.require(eta_err <= 1e-12, "eta_1");
  return o;
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe.get())) > 0) out.append(buf, n);
  status = pclose(pipe.release());
  return out;
}

Outcome determinism() {
  Outcome o;
  const std::string cmd = std::string(SFINDEX_CLI) + " verify --suite all --seed 7 2>/dev/null";
  int s1 = 0, s2 = 0;
  const std::string a = capture(cmd, s1), b = capture(cmd, s2);
  o.require(s1 == 0 && s2 == 0, "both runs exit 0");
  try {
    const auto ja = strip_timing(nlohmann::json::parse(a)), jb = strip_timing(nlohmann::json::parse(b));
    const bool same = ja.dump() == jb.dump();
    o.detail << " digests " << fnv1a_hex(ja.dump()) << " and " << fnv1a_hex(jb.dump()) << ";";
    o.require(same, "identical JSON");
  } catch (const std::exception& e) {
    o.require(false, std::string("parse: ") + e.what());
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Toeplitz index equals minus the winding number (N = 1024, n = 1..3)", toeplitz_vs_winding},
      {"residue at s = 1 matches the winding number (N = 1024, n = 1, 2)", residue_at_one},
      {"spectral-flow integral residue equals -1 (sweep N = 512..2048)", integral_formula},
      {"crossings, partition and pair index agree (N = 256, 512; n = -2..2)", engine_agreement},
      {"identity suite over 10 seeds", identity_suite},
      {"cocycle exact vs quadrature, eta_1 against MPFR", cocycle_cross_validation},
      {"verify --suite all --seed 7 is reproducible", determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " |"
              << o.detail.str() << " total " << seconds_since(t0) << " s" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
