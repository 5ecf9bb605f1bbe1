#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "sfindex/cocycle.hpp"
#include "sfindex/crossed_product.hpp"
#include "sfindex/harness.hpp"
#include "sfindex/random.hpp"
#include "sfindex/residue.hpp"
#include "sfindex/spectral_flow.hpp"

using namespace sfindex;

namespace {

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot write '" + out_path + "'");
  f << text;
}

std::string render(const SuiteResult& suite, const RunConfig& config) {
  if (config.format() == "csv") return suite_to_csv(suite);
  nlohmann::json env = environment_fingerprint(config);
  env["generated_at"] = timestamp();
  return suite_to_json(suite, env).dump(2) + "\n";
}

std::string out_path(const RunConfig& config, const std::string& explicit_out, const std::string& stem) {
  if (!explicit_out.empty()) return explicit_out;
  if (config.output_dir().empty()) return "";
  return config.output_dir() + "/" + stem + "." + config.format();
}

// engine,value,expected,abs_err,tolerance,pass
std::string engine_table(const Report& r) {
  std::ostringstream os;
  os << std::setprecision(12) << "engine,value,expected,abs_err,tolerance,pass\n";
  for (const Metric& m : r.metrics) {
    if (!m.expected) continue;
    os << '"' << m.name << "\"," << m.value << ',' << *m.expected << ',' << m.abs_err << ',' << m.tol << ','
       << (m.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral flow and index computations on finite-dimensional models"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  int threads = 0;
  std::vector<std::string> overrides;
  std::string format;
  std::string output;
  app.add_option("--config", config_file, "key=value configuration file")->check(CLI::ExistingFile);
  app.add_option("--threads", threads, "maximum number of concurrent checks")->check(CLI::PositiveNumber);
  app.add_option("--set", overrides, "configuration override key=value (repeatable)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", output, "write the output to this file");

  auto* verify = app.add_subcommand("verify", "run registered checks");
  std::string suite = "all";
  long long seed = -1;
  int seeds = 0;
  verify->add_option("--suite", suite, "check name, tag, or 'all'");
  verify->add_option("--seed", seed, "base seed (default SFINDEX_SEED or 1)");
  verify->add_option("--seeds", seeds, "number of consecutive seeds")->check(CLI::PositiveNumber);
  bool list = false;
  verify->add_flag("--list", list, "print the registry and exit");

  auto* pr = app.add_subcommand("pr-experiment", "index engines on the crossed-product model");
  int N = 0, winding = 1000000;
  double L = 0, mu = -1;
  std::string profile;
  bool no_crossings = false, no_integral = false;
  pr->add_option("--N", N, "grid size")->check(CLI::PositiveNumber);
  pr->add_option("--L", L, "circle length")->check(CLI::PositiveNumber);
  pr->add_option("--winding", winding, "winding number of the symbol");
  pr->add_option("--profile", profile, "smoothstep or fourier")->check(CLI::IsMember({"smoothstep", "fourier"}));
  pr->add_option("--mu", mu, "doubling parameter");
  pr->add_flag("--no-crossings", no_crossings, "skip the eigenvalue-crossing engine");
  pr->add_flag("--no-integral", no_integral, "skip the integral formula");

  auto* coc = app.add_subcommand("cocycle", "resolvent cocycle on a random pair (D, u)");
  int m = 1, dim = 4;
  double r = 0.5, p = 1.0;
  long long coc_seed = -1;
  coc->add_option("--m", m, "odd degree")->check(CLI::PositiveNumber);
  coc->add_option("--r", r, "resolvent parameter");
  coc->add_option("--dim", dim, "matrix size")->check(CLI::PositiveNumber);
  coc->add_option("--p", p, "summability degree");
  coc->add_option("--seed", coc_seed, "seed for D and u");

  auto* sf = app.add_subcommand("sf", "spectral flow engines on the crossed-product model");
  std::vector<std::string> model_kv;
  std::string z_grid;
  int t_nodes = 24, fit_degree = 2;
  sf->add_option("--model", model_kv, "model override KEY=VALUE, e.g. N=512 (repeatable)");
  sf->add_option("--z-grid", z_grid, "comma-separated z values");
  sf->add_option("--t-nodes", t_nodes, "Gauss-Legendre nodes in t")->check(CLI::PositiveNumber);
  sf->add_option("--fit-degree", fit_degree, "polynomial degree of the residue fit")->check(CLI::NonNegativeNumber);

  auto* rep = app.add_subcommand("report", "re-emit a saved JSON report");
  std::string input;
  rep->add_option("--input", input, "JSON report file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  RunConfig config;
  try {
    if (!config_file.empty()) config.merge_file(config_file);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (threads > 0) config.set("run.threads", std::to_string(threads));
    if (!format.empty()) config.set("run.format", format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*verify) {
      if (list) {
        for (const auto& c : check_registry()) {
          std::cout << c.name << "  (";
          for (size_t i = 0; i < c.tags.size(); ++i) std::cout << (i ? ", " : "") << c.tags[i];
          std::cout << ")\n";
        }
        return 0;
      }
      if (seed >= 0) config.set("run.seed", std::to_string(seed));
      if (seeds > 0) config.set("check.seeds", std::to_string(seeds));
      const SuiteResult res = run_suite(suite, config);
      if (res.reports.empty()) throw UsageError("suite '" + suite + "' matched no checks; see verify --list");
      for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
      emit(render(res, config), out_path(config, output, "verify"));
      std::cerr << res.pass_count() << "/" << res.reports.size() << " checks passed\n";
      return res.passed() ? 0 : 1;
    }

    if (*pr) {
      if (N > 0) config.set("model.N", std::to_string(N));
      if (L > 0) config.set("model.L", std::to_string(L));
      if (winding != 1000000) config.set("model.winding", std::to_string(winding));
      if (!profile.empty()) config.set("model.profile", profile);
      if (mu >= 0) config.set("model.mu", std::to_string(mu));
      const CrossedProductModel model = build_model(config.model());
      PrExperimentOptions opts;
      opts.run_crossings = !no_crossings;
      opts.run_integral = !no_integral;
      const auto start = std::chrono::steady_clock::now();
      Report rep_pr = pr_index_experiment(model, opts);
      rep_pr.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      SuiteResult res;
      res.reports.push_back(rep_pr);
      const std::string text = config.format() == "csv" ? engine_table(rep_pr) : render(res, config);
      emit(text, out_path(config, output, "pr-experiment"));
      return res.passed() ? 0 : 1;
    }

    if (*coc) {
      if (m % 2 == 0) throw UsageError("--m must be odd");
      const std::uint64_t s = coc_seed >= 0 ? static_cast<std::uint64_t>(coc_seed) : config.seed();
      Rng rng(s);
      const HermitianOperator d(1.5 * random_hermitian(rng, dim).matrix());
      const Matrix u = random_unitary(rng, dim);
      const TraceSpec tau = TraceSpec::uniform(dim);
      Report out("cocycle", "resolvent cocycle component");
      out.inputs = {{"m", m}, {"r", r}, {"p", p}, {"dim", dim}, {"seed", s}};
      const ChernChain ch = chern_character(u, m);
      const ChernChain chs = chern_character(u.adjoint(), m);
      const CocycleValue a = phi_m_r(ch, d, r, p, tau);
      const CocycleValue b = phi_m_r(chs, d, r, p, tau);
      out.record("phi(Ch(u)) re", a.value.real());
      out.record("phi(Ch(u)) im", a.value.imag());
      out.record("phi(Ch(u*)) re", b.value.real());
      out.record("phi(Ch(u*)) im", b.value.imag());
      out.expect_true("quadrature converged", a.converged && b.converged, Source::Computed);
      const CocycleValue pair = pair_with_chern(u, d, p, r, tau);
      out.record("pairing re", pair.value.real());
      out.record("pairing im", pair.value.imag());
      out.record("eta_m re", eta_constant(m).real());
      out.record("eta_m im", eta_constant(m).imag());
      // closed form against the line quadrature for one transported tuple
      std::vector<Matrix> tuple{u.adjoint()};
      for (int k = 0; k < m; ++k) tuple.push_back(commutator(d.matrix(), k % 2 == 0 ? u : u.adjoint()));
      ExpectationParams ep;
      ep.m = m;
      ep.r = r;
      ep.p = p;
      ep.s = 0.7;
      const cplx ex = expectation_exact(tuple, d, ep, tau);
      const QuadResult q = expectation_quadrature(tuple, d, ep, tau, 200.0, 4000);
      out.expect_close("expectation exact vs quadrature", std::abs(ex - q.value), 0.0, 1e-6, Source::Computed,
                       std::max(std::abs(ex), 1e-300));
      SuiteResult res;
      res.reports.push_back(out);
      emit(render(res, config), out_path(config, output, "cocycle"));
      return res.passed() ? 0 : 1;
    }

    if (*sf) {
      for (const auto& kv : model_kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--model expects KEY=VALUE, got '" + kv + "'");
        config.set("model." + kv.substr(0, eq), kv.substr(eq + 1));
      }
      const CrossedProductModel model = build_model(config.model());
      const TraceSpec tau = model.trace_spec();
      Report out("sf", "spectral flow on the crossed-product model");
      out.inputs = {{"N", model.params.N}, {"L", model.params.L}, {"winding", model.params.winding}};
      const double n = model.params.winding;
      const CrossingReport cr = sf_crossings(OperatorPath::straight_line(model.D, model.u), tau);
      out.expect_close("crossing count", cr.sf, -n, 1e-6, Source::Published);
      out.data["crossings"] = cr.to_json();
      const PartitionReport pr_part = sf_partition(OperatorPath::straight_line(model.D, model.u), tau);
      out.expect_close("partition sum", pr_part.value, -n, 1e-6, Source::Published);
      const std::vector<double> z = z_grid.empty() ? log_spaced(0.05, 0.5, 8) : parse_grid(z_grid);
      const auto samples = sf_integral_samples(model.D, model.u, z, t_nodes, tau);
      std::vector<double> f;
      nlohmann::json js = nlohmann::json::array();
      for (const auto& smp : samples) {
        f.push_back(smp.value.real());
        js.push_back({{"z", smp.z}, {"re", smp.value.real()}, {"im", smp.value.imag()}});
      }
      out.data["samples"] = js;
      const ResidueFit fit = integral_residue(model, z, f, fit_degree);
      out.data["fit"] = fit.to_json();
      out.expect_close("integral residue", fit.residue, -n, 0.1, Source::Published, std::max(1.0, std::abs(n)));
      SuiteResult res;
      res.reports.push_back(out);
      emit(render(res, config), out_path(config, output, "sf"));
      return res.passed() ? 0 : 1;
    }

    if (*rep) {
      std::ifstream in(input);
      const nlohmann::json j = nlohmann::json::parse(in);
      if (j.value("schema", "") != "sfindex-report/1") throw UsageError("'" + input + "' is not an sfindex report");
      SuiteResult res;
      for (const auto& rj : j.at("reports")) res.reports.push_back(Report::from_json(rj));
      if (config.format() == "csv") {
        emit(suite_to_csv(res), output);
      } else {
        emit(j.dump(2) + "\n", output);
      }
      return res.passed() ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
