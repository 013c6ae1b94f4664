#include "coopnet/strategies.hpp"

#include <cmath>
#include <cstdlib>

#include "coopnet/errors.hpp"
#include "coopnet/geometry.hpp"

namespace coopnet {

BehaviorState update_behavior(Strategy rule, const BehaviorState& current,
                              const std::vector<double>& improvement,
                              const TieBreak& tie) {
  const int m = current.size();
  switch (rule) {
    case Strategy::Def:
      return BehaviorState(m, false);
    case Strategy::Coop:
    case Strategy::Minimal:
      return BehaviorState(m, true);
    default:
      break;
  }

  if (static_cast<int>(improvement.size()) != m) {
    throw ConfigError("improvement vector does not match node count");
  }
  BehaviorState next = current;
  for (int i = 0; i < m; ++i) {
    const double d = improvement[i];
    if (rule == Strategy::Wsls) {
      const bool keep = d > 0.0 || (d == 0.0 && tie.wsls_stay_on_zero);
      if (!keep) next.set(i, !current.is_cooperator(i));
    } else {  // Tft
      const bool cooperate = d > 0.0 || (d == 0.0 && !tie.tft_defect_on_zero);
      next.set(i, cooperate);
    }
  }
  return next;
}

BehaviorState introduce_initial_cooperator(const BehaviorState& behaviors,
                                           const PlacementSpec& placement,
                                           const Topology& topo, Rng& rng) {
  BehaviorState next = behaviors;
  int chosen = 0;
  if (placement.kind == Placement::RandomNode) {
    chosen = rng.below_int(topo.size());
  } else {
    double best = std::abs(distance(topo.nodes[0], Position{}) - placement.radius);
    for (int i = 1; i < topo.size(); ++i) {
      const double gap = std::abs(distance(topo.nodes[i], Position{}) - placement.radius);
      if (gap < best) {
        best = gap;
        chosen = i;
      }
    }
  }
  next.set(chosen, true);
  return next;
}

}  // namespace coopnet
