// Command-line front end: dataset generation, solver runs, stepsize sweeps,
// property-check suites, and SVG convergence plots.
#include <CLI11.hpp>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>

#include "smopt/checks.hpp"
#include "smopt/experiments.hpp"
#include "smopt/svg.hpp"

using namespace smopt;

namespace {

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<uint64_t> parse_u64s(const std::string& csv) {
  std::vector<uint64_t> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoull(tok));
  return out;
}

// key=value overrides, one per line; '#' starts a comment
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::map<std::string, std::string> kv;
  std::ifstream is(path);
  if (!is) throw ParamError("cannot open config file " + path);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void echo_config(const std::string& out_path,
                 const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ofstream os(out_path + ".config");
  for (const auto& [k, v] : kv) os << k << "=" << v << "\n";
}

std::vector<SvgSeries> trace_csv_series(const std::vector<std::string>& paths,
                                        const std::string& ycol) {
  std::vector<SvgSeries> series;
  for (const std::string& path : paths) {
    std::ifstream is(path);
    if (!is) throw ParamError("cannot open trace " + path);
    std::string header;
    std::getline(is, header);
    std::vector<std::string> cols;
    {
      std::stringstream hs(header);
      std::string c;
      while (std::getline(hs, c, ',')) cols.push_back(c);
    }
    int yi = -1, ki = -1;
    for (size_t i = 0; i < cols.size(); ++i) {
      if (cols[i] == ycol) yi = (int)i;
      if (cols[i] == "k") ki = (int)i;
    }
    if (yi < 0 || ki < 0) throw ParamError("trace " + path + " lacks column " + ycol);
    SvgSeries s;
    s.name = path;
    std::string line;
    while (std::getline(is, line)) {
      std::stringstream ls(line);
      std::string tok;
      std::vector<std::string> f;
      while (std::getline(ls, tok, ',')) f.push_back(tok);
      if ((int)f.size() <= std::max(yi, ki)) continue;
      s.points.emplace_back(std::stod(f[ki]), std::stod(f[yi]));
    }
    series.push_back(std::move(s));
  }
  return series;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smopt: smoothing methods for weakly convex composite optimization"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate a dataset file");
  gen->set_help_flag("--help", "print help");  // frees -h/--h for the loss kind
  std::string g_problem, g_h = "quad", g_out = "dataset.txt";
  int g_m = 0, g_n = 0;
  double g_kappa = -1, g_p = -1;
  uint64_t g_seed = 0;
  gen->add_option("--problem", g_problem, "robust | pwq")->required();
  gen->add_option("--m", g_m)->required();
  gen->add_option("--n", g_n)->required();
  gen->add_option("--seed", g_seed)->required();
  gen->add_option("--kappa", g_kappa, "condition parameter (robust)");
  gen->add_option("--p", g_p, "corruption probability (robust)");
  gen->add_option("--h", g_h, "quad | quintic | exp");
  gen->add_option("--out", g_out);

  // --- run ---
  auto* run = app.add_subcommand("run", "run one solver, write a trace CSV");
  std::string r_algo, r_data, r_smoother = "huber", r_out = "trace.csv", r_config;
  double r_eta = 0.8, r_alpha0 = 0.1;
  long r_budget = 0;
  int r_batch = 0;
  uint64_t r_seed = 0;
  bool r_plot = false;
  run->add_option("--algo", r_algo, "gm|sgm|ngd|sspg|asgd-sipp|agls|agls-sipp")->required();
  run->add_option("--data", r_data)->required();
  run->add_option("--smoother", r_smoother, "huber | softmax | moreau");
  run->add_option("--eta", r_eta);
  run->add_option("--alpha0", r_alpha0);
  run->add_option("--budget", r_budget);
  run->add_option("--batch", r_batch);
  run->add_option("--seed", r_seed);
  run->add_option("--out", r_out);
  double r_rho_hat = -1;
  int r_max_inner = 8;
  run->add_option("--rho-hat", r_rho_hat, "proximal weight override (sipp)");
  run->add_option("--max-inner", r_max_inner, "inner iteration cap (sipp)");
  run->add_option("--config", r_config, "key=value overrides file");
  bool r_no_eta_decay = false, r_inner_ls = false;
  run->add_flag("--no-eta-decay", r_no_eta_decay, "keep eta fixed in sipp adaptation");
  run->add_flag("--inner-ls", r_inner_ls, "line-searched sipp inner solver");
  run->add_flag("--plot", r_plot, "also write an SVG next to the trace");

  // --- sweep ---
  auto* sweep = app.add_subcommand("sweep", "stepsize sweep over a grid and seeds");
  std::string s_algo, s_data, s_smoother = "huber", s_out = "sweep.csv";
  std::string s_grid = "1e-2,1e-1,1,10", s_seeds = "1,2,3,4,5";
  double s_eta = 0.8;
  long s_budget = 0;
  int s_batch = 0;
  sweep->add_option("--algo", s_algo)->required();
  sweep->add_option("--data", s_data)->required();
  sweep->add_option("--smoother", s_smoother);
  sweep->add_option("--grid", s_grid);
  sweep->add_option("--seeds", s_seeds);
  sweep->add_option("--eta", s_eta);
  sweep->add_option("--budget", s_budget);
  sweep->add_option("--batch", s_batch);
  sweep->add_option("--out", s_out);

  // --- check ---
  auto* check = app.add_subcommand("check", "run property suites");
  std::string c_suite = "all";
  check->add_option("--suite", c_suite, "gradients|sandwich|prox|rates|all");

  // --- plot ---
  auto* plot = app.add_subcommand("plot", "render trace CSVs to an SVG chart");
  std::vector<std::string> p_in;
  std::string p_out = "plot.svg", p_col = "f_true";
  plot->add_option("--in", p_in, "trace CSV paths")->required();
  plot->add_option("--out", p_out);
  plot->add_option("--col", p_col, "y column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      if (g_problem == "robust") {
        if (g_kappa < 0 || g_p < 0) {
          std::cerr << "gen --problem robust requires --kappa and --p\n";
          return 2;
        }
        RegressionDataset ds =
            gen_regression(g_m, g_n, g_kappa, g_p, hkind_from_string(g_h), g_seed);
        save_dataset(ds, g_out);
        std::cout << g_out << "\nf(x*) = " << format_g17(ds.f_star) << "\n";
      } else if (g_problem == "pwq") {
        PiecewiseQuadratic pq = gen_piecewise_quadratic(g_m, g_n, g_seed);
        save_dataset(pq, g_seed, g_out);
        std::cout << g_out << "\n";
      } else {
        std::cerr << "unknown --problem " << g_problem << "\n";
        return 2;
      }
    } else if (*run) {
      std::map<std::string, std::string> file_cfg;
      if (!r_config.empty()) file_cfg = read_config_file(r_config);
      // precedence: CLI flag > config file > default
      auto override_d = [&](const char* flag, const char* key, auto& slot) {
        if (run->count(flag) == 0 && file_cfg.count(key))
          slot = static_cast<std::decay_t<decltype(slot)>>(std::stod(file_cfg[key]));
      };
      override_d("--eta", "eta", r_eta);
      override_d("--alpha0", "alpha0", r_alpha0);
      override_d("--budget", "budget", r_budget);
      override_d("--batch", "batch", r_batch);
      override_d("--seed", "seed", r_seed);
      if (run->count("--smoother") == 0 && file_cfg.count("smoother"))
        r_smoother = file_cfg["smoother"];

      Algo algo = algo_from_string(r_algo);  // validate before touching the data
      LoadedDataset ds = load_dataset(r_data);
      SolverConfig cfg;
      cfg.eta = r_eta;
      cfg.alpha0 = r_alpha0;
      cfg.budget = r_budget;
      cfg.batch = r_batch;
      cfg.seed = r_seed;
      cfg.rho_hat = r_rho_hat;
      cfg.max_inner = r_max_inner;
      cfg.eta_decay = !r_no_eta_decay;
      cfg.inner_ls = r_inner_ls;
      RunResult res = run_experiment(ds, algo, r_smoother, cfg);
      std::ofstream os(r_out);
      if (!os) throw std::runtime_error("cannot open " + r_out);
      res.trace.write_csv(os);
      os.close();
      echo_config(r_out, {{"algo", r_algo},
                          {"data", r_data},
                          {"smoother", r_smoother},
                          {"eta", format_g17(r_eta)},
                          {"alpha0", format_g17(r_alpha0)},
                          {"budget", std::to_string(cfg.budget)},
                          {"batch", std::to_string(r_batch)},
                          {"seed", std::to_string(r_seed)},
                          {"out", r_out}});
      if (r_plot) {
        std::vector<SvgSeries> s = trace_csv_series({r_out}, "f_true");
        s[0].name = r_algo;
        write_svg_chart(r_out + ".svg", s, "convergence", "iteration", "f", true);
      }
      std::cout << r_out << "\nreason = " << res.summary.reason
                << ", iters = " << res.summary.iters
                << ", final f = " << format_g17(res.summary.final_f) << "\n";
    } else if (*sweep) {
      Algo s_algo_id = algo_from_string(s_algo);
      LoadedDataset ds = load_dataset(s_data);
      SolverConfig base;
      base.eta = s_eta;
      base.budget = s_budget;
      base.batch = s_batch;
      std::vector<double> grid = parse_doubles(s_grid);
      std::vector<uint64_t> seeds = parse_u64s(s_seeds);
      // parallel over cells; results assembled in deterministic grid order
      std::vector<std::future<SweepRow>> futs;
      for (double a0 : grid)
        for (uint64_t seed : seeds)
          futs.push_back(std::async(std::launch::async, [&, a0, seed] {
            SolverConfig cfg = base;
            cfg.alpha0 = a0;
            cfg.seed = seed;
            RunResult r = run_experiment(ds, s_algo_id, s_smoother, cfg);
            return SweepRow{a0,     seed,
                            r.summary.iters,  r.summary.oracles,
                            r.summary.final_f, r.summary.reason};
          }));
      std::vector<SweepRow> rows;
      for (auto& f : futs) rows.push_back(f.get());
      std::ofstream os(s_out);
      if (!os) throw std::runtime_error("cannot open " + s_out);
      write_sweep_csv(rows, os);
      echo_config(s_out, {{"algo", s_algo},
                          {"data", s_data},
                          {"smoother", s_smoother},
                          {"eta", format_g17(s_eta)},
                          {"grid", s_grid},
                          {"seeds", s_seeds},
                          {"budget", std::to_string(s_budget)},
                          {"out", s_out}});
      std::cout << s_out << "\n";
    } else if (*check) {
      std::vector<CheckResult> results = run_check_suite(c_suite);
      bool all_pass = true;
      for (const CheckResult& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name
                  << (r.detail.empty() ? "" : " | " + r.detail) << "\n";
        all_pass = all_pass && r.pass;
      }
      return all_pass ? 0 : 1;
    } else if (*plot) {
      std::vector<SvgSeries> series = trace_csv_series(p_in, p_col);
      write_svg_chart(p_out, series, p_col + " vs iteration", "iteration", p_col, true);
      std::cout << p_out << "\n";
    }
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
