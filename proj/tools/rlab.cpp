#include <atomic>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "rlab/baxter.hpp"
#include "rlab/errors.hpp"
#include "rlab/io.hpp"
#include "rlab/kernels.hpp"
#include "rlab/operators.hpp"
#include "rlab/verify.hpp"
#include "rlab/wavefunction.hpp"

using namespace rlab;

namespace {

constexpr int kExitUsage = 64;

struct Grid {
  double a = 0, b = 0;
  int count = 0;
};

// "a:b:N"
Grid parse_grid(const std::string& s) {
  Grid g;
  char c1 = 0, c2 = 0;
  std::istringstream is(s);
  if (!(is >> g.a >> c1 >> g.b >> c2 >> g.count) || c1 != ':' || c2 != ':' || g.count < 2)
    throw CLI::ValidationError("--grid", "expected a:b:N with N >= 2, got '" + s + "'");
  return g;
}

double grid_point(const Grid& g, int i) { return g.a + (g.b - g.a) * i / (g.count - 1); }

std::string csv_row(double x, cplx v) {
  std::ostringstream os;
  os.precision(17);
  os << x << "," << v.real() << "," << v.imag() << "," << std::abs(v) << "\n";
  return os.str();
}

cplx eval_kernel(const KernelFamily& kf, const std::string& name, cplx x) {
  if (name == "mu") return kf.mu(x);
  if (name == "K") return kf.kk(x);
  if (name == "Kstar") return kf.kk_star(x);
  if (name == "Khat") return kf.kk_hat(x);
  if (name == "Khatstar") return kf.kk_hat_star(x);
  if (name == "muhat") return kf.mu_hat(x);
  if (name == "k2ghat") return kf.k2ghat(x);
  throw PreconditionError("unknown kernel '" + name + "'");
}

int jobs_default() {
  if (const char* env = std::getenv("RLAB_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

// Runs the identities on a small pool; reports come back in input order.
std::vector<VerificationReport> run_all(const std::vector<std::string>& ids, const RunConfig& cfg,
                                        int& exit_code) {
  std::vector<VerificationReport> out(ids.size());
  std::vector<int> codes(ids.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < ids.size();) {
      try {
        out[i] = run_identity(ids[i], cfg.params, cfg.n, cfg.seed, cfg.verify);
        codes[i] = out[i].pass ? 0 : 1;
      } catch (const PreconditionError& e) {
        out[i].identity = ids[i];
        out[i].params = cfg.params;
        out[i].diagnostics.push_back(std::string("precondition error: ") + e.what());
        codes[i] = 2;
      } catch (const SingularValueError& e) {
        out[i].identity = ids[i];
        out[i].params = cfg.params;
        out[i].diagnostics.push_back(std::string("singular value: ") + e.what());
        codes[i] = 2;
      } catch (const DivergenceError& e) {
        out[i].identity = ids[i];
        out[i].params = cfg.params;
        out[i].diagnostics.push_back(std::string("divergence: ") + e.what());
        codes[i] = 1;
      }
    }
  };
  int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(ids.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  exit_code = 0;
  for (int c : codes) exit_code = std::max(exit_code, c);
  // a precondition error outranks plain failures
  for (int c : codes)
    if (c == 2) exit_code = 2;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic Ruijsenaars toolkit: double sine, kernels, operators, wave functions, identity checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string params_path, quad_path, config_path, out_path;
  std::uint64_t seed = RunConfig{}.seed;
  int jobs = jobs_default();
  app.add_option("--params", params_path, "JSON file with omega1, omega2, g");
  app.add_option("--quad", quad_path, "JSON file with quadrature defaults");
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--jobs", jobs, "worker threads for suites (default $RLAB_JOBS or 1)");

  auto* s2cmd = app.add_subcommand("eval-s2", "evaluate S2(z | omega1, omega2)");
  std::vector<std::string> zs;
  s2cmd->add_option("--z", zs, "points, e.g. 0.7+0.3i")->required();

  auto* kcmd = app.add_subcommand("eval-kernel", "evaluate mu, K, Kstar, Khat, Khatstar, muhat, k2ghat");
  std::string kernel_name = "K", grid_spec;
  std::vector<std::string> kxs;
  kcmd->add_option("--kernel", kernel_name, "kernel name");
  kcmd->add_option("--x", kxs, "points");
  kcmd->add_option("--grid", grid_spec, "real grid a:b:N, CSV output");

  auto* opcmd = app.add_subcommand("apply-op", "apply M_r, H_r, N_r^(1), N_r^(2) to a plane wave");
  std::string op_name = "M", op_x, op_f;
  int op_r = 1;
  opcmd->add_option("--op", op_name, "M, H, Hdirect, N1 or N2");
  opcmd->add_option("--r", op_r, "order");
  opcmd->add_option("--x", op_x, "point, comma separated")->required();
  opcmd->add_option("--f-lambda", op_f, "plane wave exp(2 pi i f.x) (default 0)");

  auto* bcmd = app.add_subcommand("apply-baxter", "apply Q, Q*, Lambda, Lambda* by quadrature");
  std::string b_variant = "Q", b_lambda = "0", b_x, b_f, b_psi;
  int b_n = 1;
  double b_tol = 1e-8;
  bcmd->add_option("--variant", b_variant, "Q, Q*, Lambda, Lambda*");
  bcmd->add_option("--n", b_n, "number of particles");
  bcmd->add_option("--lambda", b_lambda, "spectral parameter");
  bcmd->add_option("--x", b_x, "point")->required();
  bcmd->add_option("--f-lambda", b_f, "plane wave test function (default 0)");
  bcmd->add_option("--psi", b_psi, "apply to the wave function with these lambdas instead");
  bcmd->add_option("--tol", b_tol, "relative tolerance");

  auto* wcmd = app.add_subcommand("wavefunction", "evaluate Psi, E and E^as");
  std::string w_lambdas, w_x, w_grid;
  double w_tol = 1e-8;
  wcmd->add_option("--lambdas", w_lambdas, "spectral parameters")->required();
  wcmd->add_option("--x", w_x, "point")->required();
  wcmd->add_option("--grid", w_grid, "sweep x1 over a:b:N, CSV output");
  wcmd->add_option("--tol", w_tol, "outermost quadrature tolerance");

  auto* vcmd = app.add_subcommand("verify", "run identity checks");
  std::string suite;
  std::vector<std::string> identities;
  int vn = 0;
  vcmd->add_option("--suite", suite, "fast or full");
  vcmd->add_option("--identity", identities, "identity name (repeatable)");
  vcmd->add_option("--n", vn, "dimension where an identity has several");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    RunConfig cfg;
    try {
      if (!config_path.empty()) cfg = config_from_json(read_json_file(config_path));
      if (!params_path.empty()) cfg.params = params_from_json(read_json_file(params_path));
      if (!quad_path.empty()) {
        json q = read_json_file(quad_path);
        cfg.verify = verify_options_from_json(q, cfg.verify);
        cfg.quad = quad_from_json(q);
      }
    } catch (const std::exception& e) {
      std::cerr << "malformed configuration: " << e.what() << "\n";
      return kExitUsage;
    }
    if (app.count("--seed") || config_path.empty()) cfg.seed = seed;
    if (app.count("--jobs") || config_path.empty()) cfg.jobs = jobs;
    if (!out_path.empty()) cfg.out = out_path;
    const SystemParams& p = cfg.params;
    const bool custom_quad = !quad_path.empty() || !config_path.empty();
    // a --quad file overrides the numerical knobs of the built-in defaults
    auto tune = [&](QuadratureSpec& q) {
      if (!custom_quad) return;
      q.margin = cfg.quad.margin;
      q.initial_step = cfg.quad.initial_step;
      q.max_nodes = cfg.quad.max_nodes;
      q.min_levels = cfg.quad.min_levels;
      q.max_levels = cfg.quad.max_levels;
    };

    if (*s2cmd) {
      require_valid(p);
      const DoubleSine& S = *double_sine(p);
      json arr = json::array();
      for (const auto& z : zs) {
        json j = s2value_to_json(S.eval(parse_cplx(z)));
        j["z"] = cplx_to_json(parse_cplx(z));
        arr.push_back(j);
      }
      write_text(cfg.out, arr.dump(2) + "\n");
      return 0;
    }

    if (*kcmd) {
      require_valid(p);
      KernelFamily kf(p);
      if (!grid_spec.empty()) {
        Grid g = parse_grid(grid_spec);
        std::string csv = "x,re,im,abs\n";
        for (int i = 0; i < g.count; ++i) {
          double x = grid_point(g, i);
          csv += csv_row(x, eval_kernel(kf, kernel_name, x));
        }
        write_text(cfg.out, csv);
        return 0;
      }
      if (kxs.empty()) throw CLI::ValidationError("eval-kernel", "--x or --grid required");
      json arr = json::array();
      for (const auto& s : kxs) {
        cplx x = parse_cplx(s);
        arr.push_back({{"kernel", kernel_name},
                       {"x", cplx_to_json(x)},
                       {"value", cplx_to_json(eval_kernel(kf, kernel_name, x))}});
      }
      write_text(cfg.out, arr.dump(2) + "\n");
      return 0;
    }

    if (*opcmd) {
      require_valid(p);
      Tuple x = parse_tuple(op_x);
      Tuple fl = op_f.empty() ? Tuple::Zero(x.size()) : parse_tuple(op_f);
      if (fl.size() != x.size()) throw PreconditionError("--f-lambda and --x differ in arity");
      Fn f = TestFunction::plane_wave(fl).fn();
      json j = {{"op", op_name}, {"r", op_r}, {"x", tuple_to_json(x)}, {"f_lambda", tuple_to_json(fl)}};
      if (op_name == "M") j["value"] = cplx_to_json(apply_macdonald(op_r, f, x, p));
      else if (op_name == "H") {
        RuijsenaarsResult h = apply_ruijsenaars(op_r, f, x, p);
        j["value"] = cplx_to_json(h.value);
        j["branch_clean"] = h.branch_clean;
      } else if (op_name == "Hdirect") j["value"] = cplx_to_json(apply_ruijsenaars_direct(op_r, f, x, p));
      else if (op_name == "N1") j["value"] = cplx_to_json(apply_noumi_sano(1, op_r, f, x, p));
      else if (op_name == "N2") j["value"] = cplx_to_json(apply_noumi_sano(2, op_r, f, x, p));
      else throw CLI::ValidationError("--op", "unknown operator '" + op_name + "'");
      write_text(cfg.out, j.dump(2) + "\n");
      return 0;
    }

    if (*bcmd) {
      require_valid(p);
      BaxterKernelSpec spec{parse_variant(b_variant), b_n, parse_cplx(b_lambda), p};
      BaxterOperator op(spec);
      Tuple x = parse_tuple(b_x);
      const int m = spec.y_arity();
      IntegralResult r;
      json j = {{"variant", to_string(spec.variant)}, {"n", b_n}, {"lambda", cplx_to_json(spec.lambda)},
                {"x", tuple_to_json(x)}};
      if (!b_psi.empty()) {
        Tuple lambdas = parse_tuple(b_psi);
        if (lambdas.size() != m) throw PreconditionError("--psi needs one lambda per integration variable");
        WaveSpec ws;
        ws.params = p;
        ws.lambdas = lambdas;
        ws.level_tol.assign(std::max(1, m - 1), 0.1 * b_tol);
        WaveFunction wf(ws);
        double im = 0;
        for (Eigen::Index i = 0; i < m; ++i) im = std::max(im, std::abs(lambdas(i).imag()));
        QuadratureSpec q = op.default_quad(x, b_tol, (m >= 2 ? pi * p.nu_g() : 0.0) - 2 * pi * im);
        tune(q);
        r = op.apply(wf.err_fn(), x, q);
        j["psi_lambdas"] = tuple_to_json(lambdas);
      } else {
        Tuple fl = b_f.empty() ? Tuple::Zero(m) : parse_tuple(b_f);
        if (fl.size() != m) throw PreconditionError("--f-lambda needs one entry per integration variable");
        double im = 0;
        for (Eigen::Index i = 0; i < m; ++i) im = std::max(im, std::abs(fl(i).imag()));
        QuadratureSpec q = op.default_quad(x, b_tol, -2 * pi * im);
        tune(q);
        r = op.apply(TestFunction::plane_wave(fl).fn(), x, q);
        j["f_lambda"] = tuple_to_json(fl);
      }
      j["result"] = result_to_json(r);
      write_text(cfg.out, j.dump(2) + "\n");
      return r.converged ? 0 : 1;
    }

    if (*wcmd) {
      require_valid(p);
      WaveSpec ws;
      ws.params = p;
      ws.lambdas = parse_tuple(w_lambdas);
      const int n = ws.n();
      ws.level_tol.assign(std::max(1, n - 1), 0.1 * w_tol);
      for (int k = n - 3; k >= 0; --k) ws.level_tol[k] = 0.1 * ws.level_tol[k + 1];
      if (custom_quad) {
        ws.margin = cfg.quad.margin;
        ws.initial_step = cfg.quad.initial_step;
        ws.max_nodes = cfg.quad.max_nodes;
      }
      WaveFunction wf(ws);
      for (const auto& w : wf.warnings()) std::cerr << "warning: " << w << "\n";
      Tuple x = parse_tuple(w_x);
      if (!w_grid.empty()) {
        Grid g = parse_grid(w_grid);
        std::string csv = "x1,re,im,abs\n";
        bool ok = true;
        for (int i = 0; i < g.count; ++i) {
          x(0) = grid_point(g, i);
          IntegralResult r = wf.psi(x);
          ok = ok && r.converged;
          csv += csv_row(x(0).real(), r.value);
        }
        write_text(cfg.out, csv);
        return ok ? 0 : 1;
      }
      IntegralResult r;
      cplx e = wf.e_function(x, &r);
      json j = {{"lambdas", tuple_to_json(ws.lambdas)},
                {"x", tuple_to_json(x)},
                {"psi", result_to_json(r)},
                {"E", cplx_to_json(e)},
                {"E_as", cplx_to_json(wf.e_asymptotic(x))},
                {"warnings", wf.warnings()}};
      write_text(cfg.out, j.dump(2) + "\n");
      return r.converged ? 0 : 1;
    }

    if (*vcmd) {
      if (!suite.empty()) cfg.suite = suite;
      if (!identities.empty()) cfg.identities = identities;
      if (vcmd->count("--n")) cfg.n = vn;
      std::vector<std::string> ids = cfg.identities;
      if (!cfg.suite.empty()) {
        auto s = suite_identities(cfg.suite);
        ids.insert(ids.end(), s.begin(), s.end());
      }
      if (ids.empty()) throw CLI::ValidationError("verify", "--suite or --identity required");
      int code = 0;
      std::vector<VerificationReport> reports = run_all(ids, cfg, code);
      json j;
      if (ids.size() == 1 && cfg.suite.empty()) {
        j = report_to_json(reports[0]);
      } else {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r));
        j = {{"suite", cfg.suite}, {"config", config_to_json(cfg)}, {"pass", code == 0}, {"reports", arr}};
      }
      write_text(cfg.out, j.dump(2) + "\n");
      return code;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "malformed configuration: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 2;
  } catch (const SingularValueError& e) {
    std::cerr << "singular value: " << e.what() << "\n";
    return 2;
  } catch (const DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
