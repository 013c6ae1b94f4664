#pragma once

#include <optional>
#include <vector>

#include "coopnet/rng.hpp"
#include "coopnet/types.hpp"

namespace coopnet {

// Relay-eligibility region: a cooperator C may relay for the pair (tx, rx)
// when d(tx,C) <= nu * d(tx,rx) and d(C,rx) <= d(tx,rx).
struct RelayRegionParams {
  double nu = 0.39;
  double path_loss_exp = 4.0;

  // Throws ConfigError on out-of-range values. Exponents outside [2,4] are
  // accepted with a notice on stderr.
  void validate() const;
};

double distance(Position a, Position b);
double distance_sq(Position a, Position b);

// M node positions uniform over the disk of the given radius (radius = R*sqrt(u),
// angle uniform). Deterministic given the rng state. AdHoc needs M >= 2,
// CentralSink M >= 1; the sink is a pure receiver and not part of `nodes`.
Topology sample_topology(int m, double radius, Architecture architecture, Rng& rng);

// Ids of all currently-cooperating nodes inside the eligibility region,
// ordered ascending by distance to rx, ties by ascending node id.
std::vector<int> eligible_relays(const Topology& topo, const BehaviorState& behaviors,
                                 int tx, Endpoint rx, const RelayRegionParams& params);

// The relay run_slot would use: closest to rx under P2, closest to tx under P1
// (ties to the lowest id). Equals the corresponding argmin over eligible_relays.
std::optional<int> select_relay(const Topology& topo, const BehaviorState& behaviors,
                                int tx, Endpoint rx, const RelayRegionParams& params,
                                Protocol protocol);

}  // namespace coopnet
