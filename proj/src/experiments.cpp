#include "coopnet/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "coopnet/dense.hpp"
#include "coopnet/errors.hpp"

namespace coopnet {

namespace {

NormalizedEnergyReport make_report(const SimulationResult& run, double def_mean) {
  NormalizedEnergyReport report;
  report.strategy = run.config.strategy;
  report.mean_energy = run.grand_mean_energy() / def_mean;
  report.std_energy = run.grand_std_energy() / def_mean;
  report.per_radius_bins = run.radial_profile(kRadialBins);
  for (auto& [center, mean] : report.per_radius_bins) mean /= def_mean;
  report.coop_fraction_series.reserve(run.mean_coop_count.size());
  for (double c : run.mean_coop_count) {
    report.coop_fraction_series.push_back(c / run.config.m);
  }
  return report;
}

SimulationResult run_strategy(SimConfig config, Architecture architecture, Strategy strategy) {
  config.architecture = architecture;
  config.strategy = strategy;
  return run_simulation(config);
}

}  // namespace

TableResult run_table(Architecture architecture, const std::vector<Strategy>& strategies,
                      SimConfig config) {
  if (std::find(strategies.begin(), strategies.end(), Strategy::Def) == strategies.end()) {
    throw ConfigError("the strategy list must include DEF for normalization");
  }

  TableResult table;
  table.runs.reserve(strategies.size());
  for (Strategy s : strategies) {
    table.runs.push_back(run_strategy(config, architecture, s));
  }
  double def_mean = 0.0;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    if (strategies[i] == Strategy::Def) def_mean = table.runs[i].grand_mean_energy();
  }
  for (const auto& run : table.runs) table.reports.push_back(make_report(run, def_mean));
  return table;
}

Table2Result run_table2(SimConfig config, const std::vector<double>& r0_grid) {
  config.architecture = Architecture::CentralSink;

  Table2Result result;
  TableResult base = run_table(Architecture::CentralSink,
                               {Strategy::Def, Strategy::Coop, Strategy::Wsls,
                                Strategy::Minimal},
                               config);

  result.tft_sweep = sweep_initial_cooperator(r0_grid, config);
  double best_total = result.tft_sweep.front().second;
  result.tft_best_r0 = result.tft_sweep.front().first;
  for (const auto& [r0, total] : result.tft_sweep) {
    if (total < best_total) {
      best_total = total;
      result.tft_best_r0 = r0;
    }
  }

  SimConfig tft_config = config;
  tft_config.strategy = Strategy::Tft;
  tft_config.placement = PlacementSpec{Placement::AtRadius, result.tft_best_r0};
  SimulationResult tft_run = run_simulation(tft_config);

  const double def_mean = base.runs[0].grand_mean_energy();
  result.reports = {base.reports[0], base.reports[1], make_report(tft_run, def_mean),
                    base.reports[2], base.reports[3]};
  result.runs = std::move(base.runs);
  result.runs.insert(result.runs.begin() + 2, std::move(tft_run));
  return result;
}

std::vector<std::pair<double, double>> sweep_nu(Architecture architecture, Strategy strategy,
                                                const std::vector<double>& nu_grid,
                                                SimConfig config) {
  if (nu_grid.empty()) throw ConfigError("nu grid is empty");
  for (double nu : nu_grid) {
    if (!(nu > 0.0 && nu <= 1.0)) throw ConfigError("nu grid values must lie in (0, 1]");
  }

  const double def_mean =
      run_strategy(config, architecture, Strategy::Def).grand_mean_energy();

  std::vector<std::pair<double, double>> out;
  out.reserve(nu_grid.size());
  for (double nu : nu_grid) {
    SimConfig point = config;
    point.nu = nu;
    const SimulationResult run = run_strategy(point, architecture, strategy);
    out.emplace_back(nu, run.grand_mean_energy() / def_mean);
  }
  return out;
}

std::vector<std::pair<double, double>> sweep_initial_cooperator(
    const std::vector<double>& r0_grid, SimConfig config) {
  if (config.architecture != Architecture::CentralSink) {
    throw ConfigError("the initial-cooperator sweep requires the central-sink architecture");
  }
  if (r0_grid.empty()) throw ConfigError("r0 grid is empty");

  const double def_mean =
      run_strategy(config, Architecture::CentralSink, Strategy::Def).grand_mean_energy();

  std::vector<std::pair<double, double>> out;
  out.reserve(r0_grid.size());
  for (double r0 : r0_grid) {
    SimConfig point = config;
    point.strategy = Strategy::Tft;
    point.placement = PlacementSpec{Placement::AtRadius, r0};
    const SimulationResult run = run_simulation(point);
    out.emplace_back(r0, run.grand_mean_energy() / def_mean);
  }
  return out;
}

std::vector<double> cooperation_dynamics(Strategy strategy, Architecture architecture,
                                         SimConfig config) {
  if (strategy != Strategy::Tft && strategy != Strategy::Wsls) {
    throw ConfigError("cooperation dynamics are defined for TFT and WSLS");
  }
  const SimulationResult run = run_strategy(config, architecture, strategy);
  std::vector<double> fractions;
  fractions.reserve(run.mean_coop_count.size());
  for (double c : run.mean_coop_count) fractions.push_back(c / config.m);
  return fractions;
}

double minimal_prediction_ratio(double alpha, double radius) {
  dense::DenseParams params{radius, alpha, 1.0};
  params.validate();
  // Both integrands carry the node density weight x; the density constant and
  // K cancel in the ratio.
  const auto q_weighted = [&](double x) {
    return x > 0.0 ? dense::q_min(x, alpha).q * x : 0.0;
  };
  const double direct = std::pow(radius, alpha + 2.0) / (alpha + 2.0);
  const double minimal = [&] {
    // Composite Simpson on q(x) * x, smooth on [0, R].
    const int n = 2048;
    double sum = 0.0;
    const double h = radius / n;
    for (int i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      sum += w * q_weighted(i * h);
    }
    return sum * h / 3.0;
  }();
  return minimal / direct;
}

}  // namespace coopnet
