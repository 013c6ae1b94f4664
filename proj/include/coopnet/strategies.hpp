#pragma once

#include <vector>

#include "coopnet/rng.hpp"
#include "coopnet/types.hpp"

namespace coopnet {

// Zero-improvement handling; the defaults read "lose-shift" as strict loss and
// TFT's "otherwise defect" literally.
struct TieBreak {
  bool wsls_stay_on_zero = true;
  bool tft_defect_on_zero = true;
};

struct PlacementSpec {
  Placement kind = Placement::RandomNode;
  double radius = 0.26;  // target radius for AtRadius
};

// End-of-iteration update. `improvement` is the per-node change of the
// iteration fitness delta, G(n) - G(n-1). DEF/COOP/MINIMAL are constant rules;
// WSLS keeps the flag on improvement >= 0 and flips otherwise; TFT cooperates
// iff improvement > 0.
BehaviorState update_behavior(Strategy rule, const BehaviorState& current,
                              const std::vector<double>& improvement,
                              const TieBreak& tie = {});

// Flags exactly one node of an all-defector state as the seed cooperator:
// a uniformly random node, or the node whose radius is closest to the target.
BehaviorState introduce_initial_cooperator(const BehaviorState& behaviors,
                                           const PlacementSpec& placement,
                                           const Topology& topo, Rng& rng);

}  // namespace coopnet
