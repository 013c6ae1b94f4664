#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "coopnet/geometry.hpp"
#include "coopnet/rng.hpp"
#include "coopnet/strategies.hpp"
#include "coopnet/types.hpp"

namespace coopnet {

struct SimConfig {
  int m = 30;
  double radius = 1.0;
  double path_loss_exp = 4.0;
  double nu = 0.39;
  int slots = 1000;        // T, slots per iteration
  int iterations = 300;    // N
  int replications = 100;  // N_t, independent topologies
  Architecture architecture = Architecture::AdHoc;
  Strategy strategy = Strategy::Def;
  Protocol protocol = Protocol::P2;
  std::uint64_t seed = 1;
  PlacementSpec placement{};
  TieBreak tie_break{};
  int workers = 0;  // 0: COOPNET_WORKERS env or hardware concurrency

  RelayRegionParams relay_params() const { return {nu, path_loss_exp}; }
  void validate() const;  // throws ConfigError
};

// Running fitness F plus the per-iteration deltas G driving strategy updates.
// F starts at 0; every applied delta is <= 0.
struct FitnessLedger {
  std::vector<double> fitness;
  std::vector<double> delta_current;   // G(n) accumulating during iteration n
  std::vector<double> delta_previous;  // G(n-1)

  explicit FitnessLedger(int m)
      : fitness(m, 0.0), delta_current(m, 0.0), delta_previous(m, 0.0) {}

  void begin_iteration() {
    delta_previous = delta_current;
    std::fill(delta_current.begin(), delta_current.end(), 0.0);
  }

  void apply(int node, double delta_f) {
    fitness[node] += delta_f;
    delta_current[node] += delta_f;
  }

  // G(n) - G(n-1), the strategy-decision quantity.
  std::vector<double> improvement() const;
};

struct SlotOutcome {
  int tx = 0;
  Endpoint rx{};
  std::optional<int> relay;
  double tx_energy = 0.0;
  double relay_energy = 0.0;
  bool assisted = false;
};

// Per-slot indicator bits for one node, for reporting.
struct IndicatorSet {
  bool tx_flag = false;          // this node transmits in the slot
  bool has_coop_neighbor = false;  // eligible relay set of the slot is non-empty
  bool in_range_of_active = false;  // node lies in the slot's eligibility region
  bool is_cooperator = false;
};

// Per-run constants shared by every slot.
struct SlotContext {
  const Topology& topo;
  RelayRegionParams params;
  Protocol protocol = Protocol::P2;
  bool minimal_routing = false;
  double minimal_target_fraction = 0.0;  // y*(1) from the dense model
  double nu_pow = 0.0;                   // nu^alpha
};

SlotContext make_slot_context(const Topology& topo, const SimConfig& config);

using PairSchedule = std::vector<std::pair<int, Endpoint>>;

// One transmitter/receiver draw: AdHoc is uniform over ordered pairs of
// distinct nodes, CentralSink picks the transmitter and receives at the sink.
std::pair<int, Endpoint> pick_pair(const Topology& topo, Rng& rng);

// One transmission event. Charges energies, applies fitness deltas:
// the transmitter loses the foregone saving (1 - nu^alpha) * d^alpha when no
// eligible relay exists, the selected relay loses its retransmission cost,
// nobody else changes.
SlotOutcome run_slot(const SlotContext& ctx, const BehaviorState& behaviors,
                     FitnessLedger& ledger, std::vector<double>& energy, int tx,
                     Endpoint rx);

IndicatorSet indicators_for(const SlotContext& ctx, const BehaviorState& behaviors, int tx,
                            Endpoint rx, int node);

// Runs the schedule once and returns the per-node fitness delta G of the
// iteration. Rolls F forward across iterations.
std::vector<double> run_iteration(const SlotContext& ctx, const PairSchedule& schedule,
                                  const BehaviorState& behaviors, FitnessLedger& ledger,
                                  std::vector<double>& energy);

struct ReplicationResult {
  std::vector<double> radii;          // per node, distance to the disk center
  std::vector<double> energy;         // per node, consumed energy per iteration
  std::vector<double> coop_count;     // per iteration, cooperators in force
  double final_coop_fraction = 0.0;
  std::uint64_t pair_hash = 0;        // digest of the pair schedule
};

struct SimulationResult {
  SimConfig config;
  std::vector<ReplicationResult> replications;
  std::vector<double> mean_coop_count;  // per iteration, averaged over replications

  double grand_mean_energy() const;
  double grand_std_energy() const;
  // (bin center, mean energy) over equal-width radius bins, nodes pooled
  // across replications.
  std::vector<std::pair<double, double>> radial_profile(int bins) const;
};

// N_t independent replications of the two-timescale dynamics. Replications are
// distributed over worker threads; aggregation runs in replication order, so
// results are identical for any worker count.
SimulationResult run_simulation(const SimConfig& config);

int resolve_workers(int requested);

}  // namespace coopnet
