#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coopnet/csv.hpp"
#include "coopnet/dense.hpp"
#include "coopnet/engine.hpp"
#include "coopnet/errors.hpp"
#include "coopnet/experiments.hpp"
#include "coopnet/manifest.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace coopnet;

namespace {

// ---------------------------------------------------------------------------
// Option resolution: command-line flag > config file entry > scale default.

struct CommonOpts {
  std::optional<std::string> arch;
  std::optional<std::string> strategy;
  std::optional<std::string> protocol;
  std::optional<std::string> scale;
  std::optional<std::string> placement;
  std::optional<int> m;
  std::optional<int> slots;
  std::optional<int> iters;
  std::optional<int> reps;
  std::optional<double> alpha;
  std::optional<double> nu;
  std::optional<double> radius;
  std::optional<double> r0;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::string config_path;
};

void add_common_options(CLI::App* cmd, CommonOpts& o, bool with_arch = true,
                        bool with_strategy = true) {
  if (with_arch) cmd->add_option("--arch", o.arch, "architecture: adhoc|central");
  if (with_strategy) {
    cmd->add_option("--strategy", o.strategy, "strategy: def|coop|tft|wsls|minimal");
  }
  cmd->add_option("--protocol", o.protocol, "cooperation protocol: p1|p2");
  cmd->add_option("--m", o.m, "number of nodes");
  cmd->add_option("--alpha", o.alpha, "path-loss exponent");
  cmd->add_option("--nu", o.nu, "relay-request radius fraction");
  cmd->add_option("--radius", o.radius, "disk radius");
  cmd->add_option("--slots", o.slots, "slots per iteration (T)");
  cmd->add_option("--iters", o.iters, "iterations (N)");
  cmd->add_option("--reps", o.reps, "topology replications (N_t)");
  cmd->add_option("--seed", o.seed, "master RNG seed");
  cmd->add_option("--scale", o.scale, "parameter preset: desk|paper");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--config", o.config_path, "config file (key = value lines)");
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::map<std::string, std::string> entries;
  if (path.empty()) return entries;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  const auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return entries;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text);

template <>
double parse_number<double>(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config value for '" + key + "' is not a number: " + text);
  }
}

template <>
int parse_number<int>(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config value for '" + key + "' is not an integer: " + text);
  }
}

template <>
std::uint64_t parse_number<std::uint64_t>(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config value for '" + key + "' is not an integer: " + text);
  }
}

class OptionResolver {
 public:
  explicit OptionResolver(const std::map<std::string, std::string>& file) : file_(file) {}

  template <typename T>
  T get(const std::optional<T>& flag, const std::string& key, T fallback) const {
    if (flag) return *flag;
    if (const auto it = file_.find(key); it != file_.end()) {
      return parse_number<T>(key, it->second);
    }
    return fallback;
  }

  std::string get(const std::optional<std::string>& flag, const std::string& key,
                  std::string fallback) const {
    if (flag) return *flag;
    if (const auto it = file_.find(key); it != file_.end()) return it->second;
    return fallback;
  }

 private:
  const std::map<std::string, std::string>& file_;
};

Architecture parse_arch(const std::string& s) {
  if (s == "adhoc") return Architecture::AdHoc;
  if (s == "central") return Architecture::CentralSink;
  throw ConfigError("unknown architecture: " + s);
}

Strategy parse_strategy(const std::string& s) {
  if (s == "def") return Strategy::Def;
  if (s == "coop") return Strategy::Coop;
  if (s == "tft") return Strategy::Tft;
  if (s == "wsls") return Strategy::Wsls;
  if (s == "minimal") return Strategy::Minimal;
  throw ConfigError("unknown strategy: " + s);
}

Protocol parse_protocol(const std::string& s) {
  if (s == "p1") return Protocol::P1;
  if (s == "p2") return Protocol::P2;
  throw ConfigError("unknown protocol: " + s);
}

Placement parse_placement(const std::string& s) {
  if (s == "random") return Placement::RandomNode;
  if (s == "at-radius") return Placement::AtRadius;
  throw ConfigError("unknown placement: " + s);
}

struct Resolved {
  SimConfig config;
  std::string scale;
};

Resolved resolve_sim_config(const CommonOpts& o, Architecture default_arch,
                            Strategy default_strategy) {
  const auto file = load_config_file(o.config_path);
  const OptionResolver r(file);

  Resolved out;
  out.scale = r.get(o.scale, "scale", "desk");
  int default_iters = 300;
  int default_reps = 100;
  if (out.scale == "paper") {
    default_iters = 1000;
    default_reps = 1000;
  } else if (out.scale != "desk") {
    throw ConfigError("unknown scale: " + out.scale);
  }

  SimConfig& cfg = out.config;
  cfg.architecture = parse_arch(r.get(o.arch, "arch", std::string(to_string(default_arch))));
  cfg.strategy =
      parse_strategy(r.get(o.strategy, "strategy", std::string(to_string(default_strategy))));
  cfg.protocol = parse_protocol(r.get(o.protocol, "protocol", "p2"));
  cfg.m = r.get(o.m, "m", 30);
  cfg.path_loss_exp = r.get(o.alpha, "alpha", 4.0);
  cfg.nu = r.get(o.nu, "nu", 0.39);
  cfg.radius = r.get(o.radius, "radius", 1.0);
  cfg.slots = r.get(o.slots, "slots", 1000);
  cfg.iterations = r.get(o.iters, "iters", default_iters);
  cfg.replications = r.get(o.reps, "reps", default_reps);
  cfg.seed = r.get(o.seed, "seed", std::uint64_t{1});
  cfg.placement.kind =
      parse_placement(r.get(o.placement, "placement", "random"));
  cfg.placement.radius = r.get(o.r0, "r0", 0.26);
  return out;
}

ordered_json config_snapshot(const SimConfig& cfg, const std::string& scale) {
  ordered_json j;
  j["arch"] = to_string(cfg.architecture);
  j["strategy"] = to_string(cfg.strategy);
  j["protocol"] = to_string(cfg.protocol);
  j["m"] = cfg.m;
  j["radius"] = cfg.radius;
  j["alpha"] = cfg.path_loss_exp;
  j["nu"] = cfg.nu;
  j["slots"] = cfg.slots;
  j["iters"] = cfg.iterations;
  j["reps"] = cfg.replications;
  j["seed"] = cfg.seed;
  j["scale"] = scale;
  j["placement"] = cfg.placement.kind == Placement::RandomNode ? "random" : "at-radius";
  j["r0"] = cfg.placement.radius;
  j["workers"] = resolve_workers(cfg.workers);
  return j;
}

// ---------------------------------------------------------------------------
// Output emission.

struct OutputWriter {
  fs::path dir;
  RunManifest& manifest;

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(dir);
    write_file_atomic(dir / name, content);
    manifest.add_output(name, content);
  }
};

std::string table_csv(const std::vector<NormalizedEnergyReport>& reports) {
  CsvBuilder csv("strategy,mean_energy,std_energy");
  for (const auto& rep : reports) {
    csv.cell(to_string(rep.strategy)).cell(rep.mean_energy).cell(rep.std_energy);
    csv.end_row();
  }
  return csv.str();
}

std::string radial_csv(const std::vector<NormalizedEnergyReport>& reports) {
  CsvBuilder csv("strategy,bin_center,mean_energy");
  for (const auto& rep : reports) {
    for (const auto& [center, mean] : rep.per_radius_bins) {
      csv.cell(to_string(rep.strategy)).cell(center).cell(mean);
      csv.end_row();
    }
  }
  return csv.str();
}

std::string dynamics_csv(const std::vector<NormalizedEnergyReport>& reports) {
  CsvBuilder csv("strategy,iteration,coop_fraction");
  for (const auto& rep : reports) {
    for (std::size_t n = 0; n < rep.coop_fraction_series.size(); ++n) {
      csv.cell(to_string(rep.strategy)).cell(static_cast<int>(n)).cell(
          rep.coop_fraction_series[n]);
      csv.end_row();
    }
  }
  return csv.str();
}

std::string sweep_csv(const std::string& key,
                      const std::vector<std::pair<double, double>>& points) {
  CsvBuilder csv(key + ",total_energy");
  for (const auto& [x, total] : points) {
    csv.cell(x).cell(total);
    csv.end_row();
  }
  return csv.str();
}

void print_table(const std::vector<NormalizedEnergyReport>& reports) {
  std::printf("%-8s  %12s  %12s\n", "strategy", "mean_energy", "std_energy");
  for (const auto& rep : reports) {
    std::printf("%-8s  %12.5f  %12.5f\n", to_string(rep.strategy), rep.mean_energy,
                rep.std_energy);
  }
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw ConfigError("invalid sweep grid");
  std::vector<double> grid;
  for (double v = lo; v <= hi + 1e-12; v += step) grid.push_back(v);
  return grid;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_simulate(const CommonOpts& o) {
  Timer timer;
  const Resolved res = resolve_sim_config(o, Architecture::AdHoc, Strategy::Def);
  const SimConfig& cfg = res.config;
  cfg.validate();

  std::vector<Strategy> strategies{Strategy::Def};
  if (cfg.strategy != Strategy::Def) strategies.push_back(cfg.strategy);
  const TableResult table = run_table(cfg.architecture, strategies, cfg);

  RunManifest manifest("simulate", cfg.seed);
  manifest.set_config(config_snapshot(cfg, res.scale));
  OutputWriter out{o.out, manifest};
  out.write("table.csv", table_csv(table.reports));
  out.write("radial.csv", radial_csv(table.reports));
  out.write("dynamics.csv", dynamics_csv(table.reports));
  manifest.set_duration_seconds(timer.seconds());
  manifest.write(o.out);

  print_table(table.reports);
  return 0;
}

int run_table_command(const char* name, Architecture arch, const CommonOpts& o) {
  Timer timer;
  const Resolved res = resolve_sim_config(o, arch, Strategy::Def);
  SimConfig cfg = res.config;
  cfg.architecture = arch;
  cfg.strategy = Strategy::Def;
  cfg.placement = PlacementSpec{};
  cfg.validate();

  const TableResult table = run_table(
      arch, {Strategy::Def, Strategy::Coop, Strategy::Tft, Strategy::Wsls}, cfg);

  RunManifest manifest(name, cfg.seed);
  manifest.set_config(config_snapshot(cfg, res.scale));
  OutputWriter out{o.out, manifest};
  out.write("table.csv", table_csv(table.reports));
  out.write("radial.csv", radial_csv(table.reports));
  out.write("dynamics.csv", dynamics_csv(table.reports));
  manifest.set_duration_seconds(timer.seconds());
  manifest.write(o.out);

  print_table(table.reports);
  return 0;
}

int cmd_table2(const CommonOpts& o, double grid_min, double grid_max, double grid_step) {
  Timer timer;
  const Resolved res = resolve_sim_config(o, Architecture::CentralSink, Strategy::Def);
  SimConfig cfg = res.config;
  cfg.architecture = Architecture::CentralSink;
  cfg.strategy = Strategy::Def;
  cfg.placement = PlacementSpec{};
  cfg.validate();

  const Table2Result table = run_table2(cfg, make_grid(grid_min, grid_max, grid_step));

  RunManifest manifest("table2", cfg.seed);
  ordered_json snapshot = config_snapshot(cfg, res.scale);
  snapshot["grid_min"] = grid_min;
  snapshot["grid_max"] = grid_max;
  snapshot["grid_step"] = grid_step;
  snapshot["tft_row"] = "min over r0";
  snapshot["tft_r0"] = table.tft_best_r0;
  manifest.set_config(std::move(snapshot));
  OutputWriter out{o.out, manifest};
  out.write("table.csv", table_csv(table.reports));
  out.write("radial.csv", radial_csv(table.reports));
  out.write("dynamics.csv", dynamics_csv(table.reports));
  out.write("sweep_r0.csv", sweep_csv("r0", table.tft_sweep));
  manifest.set_duration_seconds(timer.seconds());
  manifest.write(o.out);

  print_table(table.reports);
  std::printf("tft row at r0 = %.2f (minimum over the sweep)\n", table.tft_best_r0);
  return 0;
}

int cmd_sweep_nu(const CommonOpts& o, double grid_min, double grid_max, double grid_step) {
  Timer timer;
  const Resolved res = resolve_sim_config(o, Architecture::AdHoc, Strategy::Coop);
  const SimConfig& cfg = res.config;
  cfg.validate();

  const auto points =
      sweep_nu(cfg.architecture, cfg.strategy, make_grid(grid_min, grid_max, grid_step), cfg);

  RunManifest manifest("sweep-nu", cfg.seed);
  ordered_json snapshot = config_snapshot(cfg, res.scale);
  snapshot["grid_min"] = grid_min;
  snapshot["grid_max"] = grid_max;
  snapshot["grid_step"] = grid_step;
  manifest.set_config(std::move(snapshot));
  OutputWriter out{o.out, manifest};
  out.write("sweep_nu.csv", sweep_csv("nu", points));
  manifest.set_duration_seconds(timer.seconds());
  manifest.write(o.out);

  auto best = points.front();
  for (const auto& p : points) {
    if (p.second < best.second) best = p;
  }
  std::printf("%zu grid points; minimum total energy %.5f at nu = %.2f\n", points.size(),
              best.second, best.first);
  return 0;
}

int cmd_sweep_r0(const CommonOpts& o, double grid_min, double grid_max, double grid_step) {
  Timer timer;
  const Resolved res = resolve_sim_config(o, Architecture::CentralSink, Strategy::Tft);
  SimConfig cfg = res.config;
  cfg.strategy = Strategy::Tft;
  cfg.validate();

  const auto points = sweep_initial_cooperator(make_grid(grid_min, grid_max, grid_step), cfg);

  RunManifest manifest("sweep-r0", cfg.seed);
  ordered_json snapshot = config_snapshot(cfg, res.scale);
  snapshot["grid_min"] = grid_min;
  snapshot["grid_max"] = grid_max;
  snapshot["grid_step"] = grid_step;
  manifest.set_config(std::move(snapshot));
  OutputWriter out{o.out, manifest};
  out.write("sweep_r0.csv", sweep_csv("r0", points));
  manifest.set_duration_seconds(timer.seconds());
  manifest.write(o.out);

  auto best = points.front();
  for (const auto& p : points) {
    if (p.second < best.second) best = p;
  }
  std::printf("%zu grid points; minimum total energy %.5f at r0 = %.2f\n", points.size(),
              best.second, best.first);
  return 0;
}

int cmd_dynamics(const CommonOpts& o) {
  Timer timer;
  const Resolved res = resolve_sim_config(o, Architecture::AdHoc, Strategy::Tft);
  const SimConfig& cfg = res.config;
  cfg.validate();

  const std::vector<double> series =
      cooperation_dynamics(cfg.strategy, cfg.architecture, cfg);

  CsvBuilder csv("strategy,iteration,coop_fraction");
  for (std::size_t n = 0; n < series.size(); ++n) {
    csv.cell(to_string(cfg.strategy)).cell(static_cast<int>(n)).cell(series[n]);
    csv.end_row();
  }

  RunManifest manifest("dynamics", cfg.seed);
  manifest.set_config(config_snapshot(cfg, res.scale));
  OutputWriter out{o.out, manifest};
  out.write("dynamics.csv", csv.str());
  manifest.set_duration_seconds(timer.seconds());
  manifest.write(o.out);

  std::printf("%s %s: final cooperator fraction %.4f\n", to_string(cfg.strategy),
              to_string(cfg.architecture), series.back());
  return 0;
}

int cmd_dense_qmin(double alpha, double x, const std::string& out_dir) {
  Timer timer;
  const dense::QMinResult r = dense::q_min(x, alpha);
  std::printf("y_star = %.10f\nq = %.10f\n", r.y_star, r.q);

  RunManifest manifest("dense-qmin", 0);
  ordered_json cfg;
  cfg["alpha"] = alpha;
  cfg["x"] = x;
  manifest.set_config(std::move(cfg));
  manifest.set_duration_seconds(timer.seconds());
  fs::create_directories(out_dir);
  manifest.write(out_dir);
  return 0;
}

int cmd_dense_emin(double alpha, double radius, double k, const std::string& out_dir) {
  Timer timer;
  const double e_min = dense::minimal_total_energy({radius, alpha, k});
  std::printf("e_min = %.10f\n", e_min);

  RunManifest manifest("dense-emin", 0);
  ordered_json cfg;
  cfg["alpha"] = alpha;
  cfg["r"] = radius;
  cfg["k"] = k;
  manifest.set_config(std::move(cfg));
  manifest.set_duration_seconds(timer.seconds());
  fs::create_directories(out_dir);
  manifest.write(out_dir);
  return 0;
}

int cmd_dense_balance(int rings, double width, double alpha, int max_iters, double tol,
                      const std::string& out_dir) {
  Timer timer;
  const dense::RingModel model{rings, width};
  const dense::BalanceResult result = dense::balance_optimize(model, alpha, max_iters, tol);
  const auto energy = dense::ring_energy_profile(model, result.dist, alpha);

  CsvBuilder balance("i,j,p_ij");
  for (int i = 1; i <= rings; ++i) {
    for (int j = 0; j < i; ++j) {
      balance.cell(i).cell(j).cell(result.dist.rows[i - 1][j]);
      balance.end_row();
    }
  }
  CsvBuilder ring_energy("i,E_i");
  for (int i = 1; i <= rings; ++i) {
    ring_energy.cell(i).cell(energy[i - 1]);
    ring_energy.end_row();
  }

  RunManifest manifest("dense-balance", 0);
  ordered_json cfg;
  cfg["rings"] = rings;
  cfg["ring_width"] = width;
  cfg["alpha"] = alpha;
  cfg["max_iters"] = max_iters;
  cfg["tol"] = tol;
  cfg["converged"] = result.converged;
  cfg["iterations"] = result.iterations;
  manifest.set_config(std::move(cfg));
  OutputWriter out{out_dir, manifest};
  out.write("dense_balance.csv", balance.str());
  out.write("ring_energy.csv", ring_energy.str());
  manifest.set_duration_seconds(timer.seconds());
  manifest.write(out_dir);

  std::printf("sigma2 = %.10g (converged: %s, iterations: %d, pg_norm: %.3g)\n",
              result.objective, result.converged ? "yes" : "no", result.iterations,
              result.projected_gradient_norm);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cooperative-relaying energy simulator and dense-network toolkit"};
  app.require_subcommand(1);

  CommonOpts sim_o, t1_o, t2_o, nu_o, r0_o, dyn_o;
  double t2_min = 0.05, t2_max = 0.95, t2_step = 0.05;
  double nu_min = 0.05, nu_max = 0.95, nu_step = 0.05;
  double r0_min = 0.05, r0_max = 0.95, r0_step = 0.05;

  CLI::App* simulate = app.add_subcommand("simulate", "one strategy/architecture run");
  add_common_options(simulate, sim_o);
  simulate->add_option("--placement", sim_o.placement,
                       "initial cooperator placement: random|at-radius");
  simulate->add_option("--r0", sim_o.r0, "target radius for at-radius placement");

  CLI::App* table1 = app.add_subcommand("table1", "ad hoc energy table (DEF/COOP/TFT/WSLS)");
  add_common_options(table1, t1_o, /*with_arch=*/false, /*with_strategy=*/false);

  CLI::App* table2 =
      app.add_subcommand("table2", "central-sink energy table (adds MINIMAL; TFT min over r0)");
  add_common_options(table2, t2_o, /*with_arch=*/false, /*with_strategy=*/false);
  table2->add_option("--grid-min", t2_min, "r0 sweep start");
  table2->add_option("--grid-max", t2_max, "r0 sweep end");
  table2->add_option("--grid-step", t2_step, "r0 sweep step");

  CLI::App* sweepnu = app.add_subcommand("sweep-nu", "total energy as a function of nu");
  add_common_options(sweepnu, nu_o);
  sweepnu->add_option("--grid-min", nu_min, "nu sweep start");
  sweepnu->add_option("--grid-max", nu_max, "nu sweep end");
  sweepnu->add_option("--grid-step", nu_step, "nu sweep step");

  CLI::App* sweepr0 = app.add_subcommand(
      "sweep-r0", "TFT total energy as a function of the initial-cooperator radius");
  add_common_options(sweepr0, r0_o, /*with_arch=*/true, /*with_strategy=*/false);
  sweepr0->add_option("--grid-min", r0_min, "r0 sweep start");
  sweepr0->add_option("--grid-max", r0_max, "r0 sweep end");
  sweepr0->add_option("--grid-step", r0_step, "r0 sweep step");

  CLI::App* dynamics = app.add_subcommand("dynamics", "cooperator fraction per iteration");
  add_common_options(dynamics, dyn_o);

  double qx = 1.0, q_alpha = 4.0;
  std::string qmin_out = ".";
  CLI::App* qmin = app.add_subcommand("dense-qmin", "minimal relay-cost density q(x)");
  qmin->add_option("--alpha", q_alpha, "path-loss exponent");
  qmin->add_option("--x", qx, "sender radius");
  qmin->add_option("--out", qmin_out, "output directory");

  double e_alpha = 4.0, e_radius = 1.0, e_k = 1.0;
  std::string emin_out = ".";
  CLI::App* emin = app.add_subcommand("dense-emin", "minimal total energy of the dense model");
  emin->add_option("--alpha", e_alpha, "path-loss exponent");
  emin->add_option("--r", e_radius, "disk radius");
  emin->add_option("--k", e_k, "propagation constant");
  emin->add_option("--out", emin_out, "output directory");

  int b_rings = 10, b_max_iters = 100000;
  double b_width = 0.1, b_alpha = 4.0, b_tol = 1e-8;
  std::string balance_out = ".";
  CLI::App* balance =
      app.add_subcommand("dense-balance", "variance-minimizing ring distribution");
  balance->add_option("--rings", b_rings, "ring count");
  balance->add_option("--ring-width", b_width, "ring width");
  balance->add_option("--alpha", b_alpha, "path-loss exponent");
  balance->add_option("--max-iters", b_max_iters, "iteration cap");
  balance->add_option("--tol", b_tol, "projected-gradient tolerance");
  balance->add_option("--out", balance_out, "output directory");

  try {
    app.parse(argc, argv);

    if (simulate->parsed()) return cmd_simulate(sim_o);
    if (table1->parsed()) return run_table_command("table1", Architecture::AdHoc, t1_o);
    if (table2->parsed()) return cmd_table2(t2_o, t2_min, t2_max, t2_step);
    if (sweepnu->parsed()) return cmd_sweep_nu(nu_o, nu_min, nu_max, nu_step);
    if (sweepr0->parsed()) {
      if (r0_o.arch && *r0_o.arch != "central") {
        throw ConfigError("sweep-r0 requires the central-sink architecture");
      }
      return cmd_sweep_r0(r0_o, r0_min, r0_max, r0_step);
    }
    if (dynamics->parsed()) return cmd_dynamics(dyn_o);
    if (qmin->parsed()) return cmd_dense_qmin(q_alpha, qx, qmin_out);
    if (emin->parsed()) return cmd_dense_emin(e_alpha, e_radius, e_k, emin_out);
    if (balance->parsed()) {
      return cmd_dense_balance(b_rings, b_width, b_alpha, b_max_iters, b_tol, balance_out);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
