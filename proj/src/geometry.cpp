#include "coopnet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "coopnet/errors.hpp"

namespace coopnet {

const char* to_string(Architecture a) {
  return a == Architecture::AdHoc ? "adhoc" : "central";
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Def: return "def";
    case Strategy::Coop: return "coop";
    case Strategy::Tft: return "tft";
    case Strategy::Wsls: return "wsls";
    case Strategy::Minimal: return "minimal";
  }
  return "?";
}

const char* to_string(Protocol p) { return p == Protocol::P1 ? "p1" : "p2"; }

void RelayRegionParams::validate() const {
  if (!(nu >= 0.0 && nu <= 1.0)) throw ConfigError("nu must lie in [0, 1]");
  if (!(path_loss_exp > 0.0)) throw ConfigError("path-loss exponent must be positive");
  if (path_loss_exp < 2.0 || path_loss_exp > 4.0) {
    std::fprintf(stderr, "notice: path-loss exponent %g is outside the typical range [2, 4]\n",
                 path_loss_exp);
  }
}

double distance_sq(Position a, Position b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(Position a, Position b) { return std::sqrt(distance_sq(a, b)); }

Topology sample_topology(int m, double radius, Architecture architecture, Rng& rng) {
  const int min_nodes = architecture == Architecture::AdHoc ? 2 : 1;
  if (m < min_nodes) throw ConfigError("node count too small for the architecture");
  if (!(radius > 0.0)) throw ConfigError("disk radius must be positive");

  Topology topo;
  topo.radius = radius;
  topo.architecture = architecture;
  topo.nodes.reserve(m);
  for (int i = 0; i < m; ++i) {
    const double r = radius * std::sqrt(rng.uniform01());
    const double theta = rng.uniform01() * 2.0 * M_PI;
    topo.nodes.push_back(Position{r * std::cos(theta), r * std::sin(theta)});
  }
  if (architecture == Architecture::CentralSink) topo.sink = Position{0.0, 0.0};
  return topo;
}

namespace {

// Shared predicate; squared distances, so no sqrt on the scan path.
inline bool eligible(const Topology& topo, const BehaviorState& behaviors, int c, int tx,
                     Endpoint rx, Position tx_pos, Position rx_pos, double d2_pair,
                     double nu_sq) {
  if (!behaviors.is_cooperator(c)) return false;
  if (c == tx || (!rx.is_sink() && c == rx.id)) return false;
  const Position pc = topo.nodes[c];
  if (distance_sq(tx_pos, pc) > nu_sq * d2_pair) return false;
  return distance_sq(pc, rx_pos) <= d2_pair;
}

}  // namespace

std::vector<int> eligible_relays(const Topology& topo, const BehaviorState& behaviors,
                                 int tx, Endpoint rx, const RelayRegionParams& params) {
  const Position tx_pos = topo.nodes[tx];
  const Position rx_pos = topo.endpoint_position(rx);
  const double d2_pair = distance_sq(tx_pos, rx_pos);
  const double nu_sq = params.nu * params.nu;

  std::vector<std::pair<double, int>> keyed;
  for (int c = 0; c < topo.size(); ++c) {
    if (eligible(topo, behaviors, c, tx, rx, tx_pos, rx_pos, d2_pair, nu_sq)) {
      keyed.emplace_back(distance_sq(topo.nodes[c], rx_pos), c);
    }
  }
  std::sort(keyed.begin(), keyed.end());

  std::vector<int> ids;
  ids.reserve(keyed.size());
  for (const auto& [d2, id] : keyed) ids.push_back(id);
  return ids;
}

std::optional<int> select_relay(const Topology& topo, const BehaviorState& behaviors,
                                int tx, Endpoint rx, const RelayRegionParams& params,
                                Protocol protocol) {
  if (behaviors.cooperator_count() == 0) return std::nullopt;

  const Position tx_pos = topo.nodes[tx];
  const Position rx_pos = topo.endpoint_position(rx);
  const double d2_pair = distance_sq(tx_pos, rx_pos);
  const double nu_sq = params.nu * params.nu;
  const Position anchor = protocol == Protocol::P2 ? rx_pos : tx_pos;

  int best = -1;
  double best_key = 0.0;
  for (int c = 0; c < topo.size(); ++c) {
    if (!eligible(topo, behaviors, c, tx, rx, tx_pos, rx_pos, d2_pair, nu_sq)) continue;
    const double key = distance_sq(topo.nodes[c], anchor);
    if (best < 0 || key < best_key) {
      best = c;
      best_key = key;
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

}  // namespace coopnet
