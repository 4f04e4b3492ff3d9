#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "elastica/diagnostics.hpp"
#include "elastica/io.hpp"
#include "elastica/seeds.hpp"

namespace fs = std::filesystem;
using elastica::io::json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr double kTwoPi = 2.0 * std::numbers::pi;

elastica::DerivMode parse_mode(const std::string& name) {
  if (name == "fd4") return elastica::DerivMode::Fd4;
  if (name == "spectral") return elastica::DerivMode::Spectral;
  throw elastica::InvalidSpec("unknown mode '" + name + "' (fd4|spectral)");
}

struct CurveInput {
  std::string seed;
  std::string file;
  int samples = 256;
  int dim = 2;

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "seed spec, e.g. circle:1 or ellipse:1.2,0.8");
    app->add_option("--curve", file, "curve JSON file");
    app->add_option("--samples", samples, "grid size for --seed")->check(CLI::PositiveNumber);
    app->add_option("--dim", dim, "ambient dimension for --seed")->check(CLI::Range(2, 16));
  }

  elastica::DiscreteCurve load() const {
    if (!seed.empty() && !file.empty())
      throw elastica::InvalidSpec("give either --seed or --curve, not both");
    if (!seed.empty()) return elastica::seed_curve(seed, samples, dim);
    if (!file.empty()) return elastica::io::read_curve(file);
    throw elastica::InvalidSpec("one of --seed or --curve is required");
  }
};

/// Smooth random normal perturbation fields used by grad-check: a handful of
/// low Fourier modes per ambient coordinate, projected onto the normal bundle.
elastica::NormalField random_smooth_field(const elastica::DiscreteCurve& curve,
                                          std::mt19937_64& rng,
                                          elastica::DerivMode mode) {
  auto uniform = [&rng]() {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  };
  const int n = curve.samples();
  Eigen::MatrixXd values(n, curve.dim());
  for (int c = 0; c < curve.dim(); ++c) {
    double a[6], b[6];
    for (int m = 0; m < 6; ++m) {
      a[m] = uniform();
      b[m] = uniform();
    }
    for (int i = 0; i < n; ++i) {
      const double t = kTwoPi * i / n;
      double v = 0.0;
      for (int m = 0; m < 6; ++m) v += a[m] * std::cos(m * t) + b[m] * std::sin(m * t);
      values(i, c) = v;
    }
  }
  return elastica::make_normal(curve, values, mode);
}

int worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("ELASTICA_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<int>(n);
}

// --------------------------------------------------------------------------
// evolve

struct EvolveOptions {
  CurveInput input;
  elastica::EnergyParams params;
  elastica::StepperConfig config;
  std::string scheme = "semi-implicit";
  std::string mode = "fd4";
  std::string out;
  std::string resume;
  int snapshot_every = 0;
  bool loja = false;
  double g_min = 1e-10;
  double g_max = 1e-2;
};

json evolve_manifest(const EvolveOptions& opt) {
  return json{{"version", kVersion},
              {"seed", opt.input.seed},
              {"curve", opt.input.file},
              {"samples", opt.input.samples},
              {"dim", opt.input.dim},
              {"lambda", opt.params.lambda},
              {"scheme", opt.scheme},
              {"mode", opt.mode},
              {"dt_init", opt.config.dt_init},
              {"dt_min", opt.config.dt_min},
              {"dt_max", opt.config.dt_max},
              {"energy_tol", opt.config.energy_tol},
              {"redistribute", opt.config.redistribute},
              {"stop_grad_tol", opt.config.stop_grad_tol},
              {"stop_t_max", opt.config.stop_t_max},
              {"checkpoint_every", opt.config.checkpoint_every},
              {"snapshot_every", opt.snapshot_every},
              {"loja", opt.loja},
              {"resume", opt.resume}};
}

int run_evolve(EvolveOptions opt, std::ostream& log) {
  opt.config.scheme =
      opt.scheme == "explicit" ? elastica::Scheme::Explicit : elastica::Scheme::SemiImplicit;
  opt.config.mode = parse_mode(opt.mode);
  if (opt.out.empty()) throw elastica::InvalidSpec("evolve: --out directory is required");
  fs::create_directories(opt.out);
  const fs::path dir(opt.out);

  elastica::io::write_json_file((dir / "manifest.json").string(), evolve_manifest(opt));
  if (opt.snapshot_every > 0) fs::create_directories(dir / "snapshots");

  elastica::FlowState start =
      opt.resume.empty()
          ? elastica::make_state(opt.input.load(), opt.config, opt.params)
          : elastica::io::read_state((fs::path(opt.resume) / "checkpoint.json").string());

  auto on_step = [&](const elastica::FlowState& state, const elastica::TraceRow& row) {
    if (opt.snapshot_every > 0 && row.step % opt.snapshot_every == 0) {
      char name[32];
      std::snprintf(name, sizeof(name), "snap_%08ld.json", row.step);
      elastica::io::write_curve((dir / "snapshots" / name).string(), state.curve);
    }
    if (opt.config.checkpoint_every > 0 && row.step > 0 &&
        row.step % opt.config.checkpoint_every == 0)
      elastica::io::write_state((dir / "checkpoint.json").string(), state);
  };

  const elastica::EvolveResult result =
      elastica::evolve(start, opt.config, opt.params, on_step);

  elastica::io::write_trace((dir / "trace.csv").string(), result.trace);
  elastica::io::write_curve((dir / "final.json").string(), result.state.curve);
  elastica::io::write_state((dir / "final_state.json").string(), result.state);

  if (opt.loja) {
    const elastica::LojaTrace lt = elastica::make_loja_trace(result.trace);
    const elastica::LojaFit fit = elastica::fit_alpha(lt, {opt.g_min, opt.g_max});
    elastica::io::write_fit((dir / "fit.json").string(), fit);
    log << "alpha " << fit.alpha << " C " << fit.c << " violations " << fit.violations
        << '\n';
  }

  log << (result.converged ? "converged" : "t_max reached") << " t " << result.state.t
      << " steps " << result.state.step_count << " energy " << result.state.energy
      << " grad " << result.state.grad_norm_l2ds << '\n';
  return result.converged ? 0 : 2;
}

int run_sweep(const std::string& sweep_file, const EvolveOptions& base) {
  const json jobs = elastica::io::read_json_file(sweep_file);
  if (!jobs.is_array()) throw elastica::InvalidSpec("sweep: expected a JSON array");

  std::vector<EvolveOptions> opts;
  for (const json& j : jobs) {
    EvolveOptions o = base;
    if (j.contains("seed")) o.input.seed = j.at("seed").get<std::string>();
    if (j.contains("curve")) o.input.file = j.at("curve").get<std::string>();
    if (j.contains("samples")) o.input.samples = j.at("samples").get<int>();
    if (j.contains("dim")) o.input.dim = j.at("dim").get<int>();
    if (j.contains("lambda")) o.params.lambda = j.at("lambda").get<double>();
    if (j.contains("scheme")) o.scheme = j.at("scheme").get<std::string>();
    if (j.contains("mode")) o.mode = j.at("mode").get<std::string>();
    if (j.contains("dt_init")) o.config.dt_init = j.at("dt_init").get<double>();
    if (j.contains("dt_min")) o.config.dt_min = j.at("dt_min").get<double>();
    if (j.contains("dt_max")) o.config.dt_max = j.at("dt_max").get<double>();
    if (j.contains("stop_grad_tol")) o.config.stop_grad_tol = j.at("stop_grad_tol").get<double>();
    if (j.contains("stop_t_max")) o.config.stop_t_max = j.at("stop_t_max").get<double>();
    if (j.contains("loja")) o.loja = j.at("loja").get<bool>();
    if (!j.contains("out")) throw elastica::InvalidSpec("sweep: every job needs an 'out'");
    o.out = j.at("out").get<std::string>();
    opts.push_back(std::move(o));
  }

  std::atomic<std::size_t> next{0};
  std::atomic<int> worst{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= opts.size()) return;
      std::ostringstream log;
      int code = 1;
      try {
        code = run_evolve(opts[i], log);
      } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
      }
      static std::mutex mtx;
      std::scoped_lock lock(mtx);
      std::cout << "[job " << i << " -> " << opts[i].out << "] exit " << code << '\n'
                << log.str();
      int cur = worst.load();
      // error (1) dominates non-convergence (2) dominates success (0)
      auto rank = [](int c) { return c == 1 ? 2 : (c == 2 ? 1 : 0); };
      while (rank(code) > rank(cur) && !worst.compare_exchange_weak(cur, code)) {
      }
    }
  };
  const int nw = std::min<int>(worker_count(), static_cast<int>(opts.size()));
  std::vector<std::thread> pool;
  for (int i = 0; i < nw; ++i) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  return worst.load();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elastic flow of closed curves: evolution, verification, diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // ---- evolve ----
  EvolveOptions ev;
  std::string sweep_file;
  CLI::App* evolve = app.add_subcommand("evolve", "run the gradient flow");
  ev.input.attach(evolve);
  evolve->add_option("--lambda", ev.params.lambda, "length weight")->check(CLI::PositiveNumber);
  evolve->add_option("--scheme", ev.scheme, "explicit|semi-implicit");
  evolve->add_option("--mode", ev.mode, "fd4|spectral");
  evolve->add_option("--dt-init", ev.config.dt_init);
  evolve->add_option("--dt-min", ev.config.dt_min);
  evolve->add_option("--dt-max", ev.config.dt_max);
  evolve->add_option("--energy-tol", ev.config.energy_tol);
  evolve->add_flag("!--no-redistribute", ev.config.redistribute,
                   "disable arclength redistribution");
  evolve->add_option("--stop-grad", ev.config.stop_grad_tol);
  evolve->add_option("--t-max", ev.config.stop_t_max);
  evolve->add_option("--out", ev.out, "output directory");
  evolve->add_option("--snapshot-every", ev.snapshot_every, "curve snapshot cadence (steps)");
  evolve->add_option("--checkpoint-every", ev.config.checkpoint_every,
                     "checkpoint cadence (steps)");
  evolve->add_flag("--loja", ev.loja, "fit the decay exponent after the run");
  evolve->add_option("--g-min", ev.g_min, "fit window lower gap bound");
  evolve->add_option("--g-max", ev.g_max, "fit window upper gap bound");
  evolve->add_option("--resume", ev.resume, "directory holding checkpoint.json");
  evolve->add_option("--sweep", sweep_file, "JSON array of jobs run on a worker pool");

  // ---- energy ----
  CurveInput en_input;
  std::string en_mode = "fd4";
  double en_lambda = 1.0;
  CLI::App* energy = app.add_subcommand("energy", "print energy, length, gradient norm");
  en_input.attach(energy);
  energy->add_option("--mode", en_mode, "fd4|spectral");
  energy->add_option("--lambda", en_lambda)->check(CLI::PositiveNumber);

  // ---- grad-check ----
  CurveInput gc_input;
  std::string gc_mode = "spectral";
  double gc_lambda = 1.0, gc_h = 1e-5, gc_tol = 1e-5, gc_abs = 1e-8;
  int gc_trials = 20;
  std::uint64_t gc_rng = 1234;
  CLI::App* gradcheck =
      app.add_subcommand("grad-check", "first variation vs FD directional derivative");
  gc_input.attach(gradcheck);
  gradcheck->add_option("--mode", gc_mode, "fd4|spectral");
  gradcheck->add_option("--lambda", gc_lambda)->check(CLI::PositiveNumber);
  gradcheck->add_option("--fd-step", gc_h, "FD step");
  gradcheck->add_option("--tol", gc_tol, "relative tolerance");
  gradcheck->add_option("--abs-tol", gc_abs, "absolute floor");
  gradcheck->add_option("--trials", gc_trials, "number of random fields");
  gradcheck->add_option("--rng-seed", gc_rng);

  // ---- hessian ----
  CurveInput he_input;
  std::string he_mode = "fd4", he_out;
  double he_lambda = 1.0, he_kernel_tol = 1e-4;
  CLI::App* hessian = app.add_subcommand("hessian", "assemble the second-variation form");
  he_input.attach(hessian);
  hessian->add_option("--mode", he_mode, "fd4|spectral");
  hessian->add_option("--lambda", he_lambda)->check(CLI::PositiveNumber);
  hessian->add_option("--out", he_out, "binary operator dump");
  hessian->add_option("--kernel-tol", he_kernel_tol, "relative kernel threshold");

  // ---- spectrum ----
  CurveInput sp_input;
  std::string sp_mode = "fd4", sp_out, sp_operator;
  double sp_lambda = 1.0;
  bool sp_fredholm = false;
  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues as CSV index,eigenvalue");
  sp_input.attach(spectrum);
  spectrum->add_option("--mode", sp_mode, "fd4|spectral");
  spectrum->add_option("--lambda", sp_lambda)->check(CLI::PositiveNumber);
  spectrum->add_option("--operator", sp_operator, "read a binary operator dump instead");
  spectrum->add_flag("--fredholm", sp_fredholm, "use Id + (nabla_perp)^4 instead of the Hessian");
  spectrum->add_option("--out", sp_out, "CSV path (default stdout)");

  // ---- fredholm-check ----
  CurveInput fr_input;
  std::string fr_mode = "fd4";
  double fr_tol = 1e-6;
  CLI::App* fredholm =
      app.add_subcommand("fredholm-check", "coercivity of Id + (nabla_perp)^4");
  fr_input.attach(fredholm);
  fredholm->add_option("--mode", fr_mode, "fd4|spectral");
  fredholm->add_option("--tol", fr_tol, "allowed defect below 1");

  // ---- graph ----
  std::string gr_reference, gr_curve, gr_out, gr_mode = "fd4";
  CLI::App* graph = app.add_subcommand("graph", "normal graph of one curve over another");
  graph->add_option("--reference", gr_reference, "reference curve JSON")->required();
  graph->add_option("--over", gr_curve, "curve to represent, JSON")->required();
  graph->add_option("--mode", gr_mode, "fd4|spectral");
  graph->add_option("--out", gr_out, "field JSON output")->required();

  // ---- loja-fit ----
  std::string lf_trace, lf_out, lf_plot;
  double lf_gmin = 1e-10, lf_gmax = 1e-2;
  std::optional<double> lf_eref;
  CLI::App* lojafit = app.add_subcommand("loja-fit", "decay exponent fit from a trace CSV");
  lojafit->add_option("--trace", lf_trace, "trace CSV")->required();
  lojafit->add_option("--e-ref", lf_eref, "limit energy (default: final row)");
  lojafit->add_option("--g-min", lf_gmin);
  lojafit->add_option("--g-max", lf_gmax);
  lojafit->add_option("--out", lf_out, "fit JSON output");
  lojafit->add_option("--plot-data", lf_plot, "CSV of log gap, log dual norm");

  // ---- seed ----
  std::string sd_spec, sd_out;
  int sd_samples = 256, sd_dim = 2;
  CLI::App* seed = app.add_subcommand("seed", "write a seed curve as JSON");
  seed->add_option("--seed", sd_spec, "seed spec")->required();
  seed->add_option("--samples", sd_samples)->check(CLI::PositiveNumber);
  seed->add_option("--dim", sd_dim)->check(CLI::Range(2, 16));
  seed->add_option("--out", sd_out, "curve JSON output")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*evolve) {
      if (!sweep_file.empty()) return run_sweep(sweep_file, ev);
      return run_evolve(ev, std::cout);
    }

    if (*energy) {
      const elastica::DiscreteCurve curve = en_input.load();
      const elastica::DerivMode mode = parse_mode(en_mode);
      const elastica::EnergyParams params{en_lambda};
      json out{{"energy", elastica::elastic_energy(curve, params, mode)},
               {"length", elastica::curve_length(curve, mode)},
               {"grad_norm_l2ds",
                elastica::norm_l2ds(
                    elastica::gradient(curve, params, mode).as_vector_field(), curve, mode)}};
      std::cout << out.dump(2) << '\n';
      return 0;
    }

    if (*gradcheck) {
      const elastica::DiscreteCurve curve = gc_input.load();
      const elastica::DerivMode mode = parse_mode(gc_mode);
      const elastica::EnergyParams params{gc_lambda};
      std::mt19937_64 rng(gc_rng);
      double worst_rel = 0.0;
      bool ok = true;
      for (int t = 0; t < gc_trials; ++t) {
        const elastica::NormalField field = random_smooth_field(curve, rng, mode);
        const elastica::VectorField x = field.as_vector_field();
        const double fv = elastica::first_variation(curve, x, params, mode);
        const double fd = elastica::fd_directional(curve, x, params, gc_h, mode);
        const double err = std::abs(fv - fd);
        ok = ok && err <= std::max(gc_tol * std::abs(fd), gc_abs);
        worst_rel = std::max(worst_rel, err / std::max(std::abs(fd), gc_abs));
      }
      std::cout << "max relative mismatch " << worst_rel << " over " << gc_trials
                << " fields: " << (ok ? "ok" : "FAIL") << '\n';
      return ok ? 0 : 1;
    }

    if (*hessian) {
      const elastica::DiscreteCurve curve = he_input.load();
      const elastica::DerivMode mode = parse_mode(he_mode);
      const elastica::NormalBasis basis(curve, mode);
      const elastica::OperatorMatrix op =
          elastica::hessian_matrix(curve, {he_lambda}, basis, mode);
      if (!he_out.empty()) elastica::io::write_operator(he_out, op);
      std::cout << "size " << op.form.rows() << " symmetry defect " << op.symmetry_defect
                << " kernel_dim " << elastica::kernel_dim(op, he_kernel_tol) << '\n';
      return 0;
    }

    if (*spectrum) {
      elastica::OperatorMatrix op;
      if (!sp_operator.empty()) {
        op = elastica::io::read_operator(sp_operator);
      } else {
        const elastica::DiscreteCurve curve = sp_input.load();
        const elastica::DerivMode mode = parse_mode(sp_mode);
        const elastica::NormalBasis basis(curve, mode);
        op = sp_fredholm ? elastica::id_plus_nabla4_matrix(curve, basis, mode)
                         : elastica::hessian_matrix(curve, {sp_lambda}, basis, mode);
      }
      const Eigen::VectorXd eig = elastica::operator_eigenvalues(op);
      std::ostringstream csv;
      csv << "index,eigenvalue\n";
      for (int i = 0; i < eig.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", eig[i]);
        csv << i << ',' << buf << '\n';
      }
      if (sp_out.empty()) {
        std::cout << csv.str();
      } else {
        std::ofstream out(sp_out);
        if (!out) throw elastica::IoError("cannot open '" + sp_out + "'");
        out << csv.str();
      }
      return 0;
    }

    if (*fredholm) {
      const elastica::DiscreteCurve curve = fr_input.load();
      const elastica::DerivMode mode = parse_mode(fr_mode);
      const elastica::NormalBasis basis(curve, mode);
      const Eigen::VectorXd eig =
          elastica::operator_eigenvalues(elastica::id_plus_nabla4_matrix(curve, basis, mode));
      const double min_eig = eig.minCoeff();
      const bool ok = min_eig >= 1.0 - fr_tol;
      std::cout << "min eigenvalue " << min_eig << ": " << (ok ? "ok" : "FAIL") << '\n';
      return ok ? 0 : 1;
    }

    if (*graph) {
      const elastica::DiscreteCurve ref = elastica::io::read_curve(gr_reference);
      const elastica::DiscreteCurve sigma = elastica::io::read_curve(gr_curve);
      const elastica::TubularData tub(ref, parse_mode(gr_mode));
      const elastica::NormalField field = elastica::normal_graph(tub, sigma);
      elastica::io::write_field(gr_out, field);
      std::cout << "tubular radius " << tub.radius() << " max offset "
                << field.values().rowwise().norm().maxCoeff() << '\n';
      return 0;
    }

    if (*lojafit) {
      const elastica::FlowTrace trace = elastica::io::read_trace(lf_trace);
      const elastica::LojaTrace lt = lf_eref ? elastica::make_loja_trace(trace, *lf_eref)
                                             : elastica::make_loja_trace(trace);
      const elastica::LojaFit fit = elastica::fit_alpha(lt, {lf_gmin, lf_gmax});
      if (!lf_out.empty()) elastica::io::write_fit(lf_out, fit);
      if (!lf_plot.empty()) {
        std::ofstream out(lf_plot);
        if (!out) throw elastica::IoError("cannot open '" + lf_plot + "'");
        out << "log_gap,log_dual\n";
        for (const elastica::LojaRow& row : lt.rows)
          if (row.energy_gap > 0.0 && row.dual_grad_norm > 0.0)
            out << std::log(row.energy_gap) << ',' << std::log(row.dual_grad_norm) << '\n';
      }
      std::cout << "alpha " << fit.alpha << " C " << fit.c << " residual " << fit.residual
                << " violations " << fit.violations << '\n';
      return 0;
    }

    if (*seed) {
      elastica::io::write_curve(sd_out, elastica::seed_curve(sd_spec, sd_samples, sd_dim));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
