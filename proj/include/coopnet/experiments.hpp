#pragma once

#include <utility>
#include <vector>

#include "coopnet/engine.hpp"

namespace coopnet {

inline constexpr int kRadialBins = 10;

// Per-strategy energy statistics in DEF units (the DEF mean defines 1).
struct NormalizedEnergyReport {
  Strategy strategy = Strategy::Def;
  double mean_energy = 0.0;
  double std_energy = 0.0;
  std::vector<std::pair<double, double>> per_radius_bins;  // (bin center, mean energy)
  std::vector<double> coop_fraction_series;                // per iteration
};

struct TableResult {
  std::vector<NormalizedEnergyReport> reports;   // in strategy order
  std::vector<SimulationResult> runs;            // matching raw runs
};

// Runs every strategy with common random numbers (same seed: identical
// topologies and pair schedules) and normalizes by the DEF mean. DEF must be
// in the list.
TableResult run_table(Architecture architecture, const std::vector<Strategy>& strategies,
                      SimConfig config);

struct Table2Result {
  std::vector<NormalizedEnergyReport> reports;  // DEF, COOP, TFT, WSLS, MINIMAL
  std::vector<SimulationResult> runs;
  std::vector<std::pair<double, double>> tft_sweep;  // (r0, total energy)
  double tft_best_r0 = 0.0;  // the TFT row is reported at this placement
};

// Central-sink table; the TFT row is the minimum over initial-cooperator radii.
Table2Result run_table2(SimConfig config, const std::vector<double>& r0_grid);

// Total normalized energy per nu, common seeds across grid points.
std::vector<std::pair<double, double>> sweep_nu(Architecture architecture, Strategy strategy,
                                                const std::vector<double>& nu_grid,
                                                SimConfig config);

// Total normalized energy per initial-cooperator radius (TFT, central sink).
std::vector<std::pair<double, double>> sweep_initial_cooperator(
    const std::vector<double>& r0_grid, SimConfig config);

// Per-iteration cooperator fraction averaged over replications (TFT or WSLS).
std::vector<double> cooperation_dynamics(Strategy strategy, Architecture architecture,
                                         SimConfig config);

// Analytic counterpart of the simulated MINIMAL mean: the minimal-energy
// density integrated against the node density, over the same integral of the
// direct-transmission cost. Independent of K and R.
double minimal_prediction_ratio(double alpha, double radius);

}  // namespace coopnet
