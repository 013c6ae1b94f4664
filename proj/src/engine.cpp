#include "coopnet/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

#include "coopnet/dense.hpp"
#include "coopnet/errors.hpp"
#include "coopnet/hash.hpp"

namespace coopnet {

using dense::pow_alpha;

namespace {

constexpr std::uint64_t kStreamReplication = 0xA1;
constexpr std::uint64_t kStreamTopology = 0xB2;
constexpr std::uint64_t kStreamPairs = 0xC3;
constexpr std::uint64_t kStreamPlacement = 0xD4;
constexpr std::uint64_t kStreamPartners = 0xE5;

void parallel_for_index(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("COOPNET_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void SimConfig::validate() const {
  const int min_nodes = architecture == Architecture::AdHoc ? 2 : 1;
  if (m < min_nodes) throw ConfigError("node count too small for the architecture");
  if (!(radius > 0.0)) throw ConfigError("disk radius must be positive");
  if (slots < 1) throw ConfigError("slots per iteration must be >= 1");
  if (iterations < 1) throw ConfigError("iteration count must be >= 1");
  if (replications < 1) throw ConfigError("replication count must be >= 1");
  if (workers < 0) throw ConfigError("worker count must be >= 0");
  relay_params().validate();
  if (strategy == Strategy::Minimal) {
    if (architecture != Architecture::CentralSink) {
      throw ConfigError("MINIMAL requires the central-sink architecture");
    }
    if (!(path_loss_exp > 1.0)) {
      throw ConfigError("MINIMAL requires path-loss exponent > 1");
    }
  }
  if (placement.kind == Placement::AtRadius && architecture != Architecture::CentralSink) {
    throw ConfigError("AtRadius placement requires the central-sink architecture");
  }
}

std::vector<double> FitnessLedger::improvement() const {
  std::vector<double> out(delta_current.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = delta_current[i] - delta_previous[i];
  return out;
}

SlotContext make_slot_context(const Topology& topo, const SimConfig& config) {
  SlotContext ctx{topo, config.relay_params(), config.protocol,
                  config.strategy == Strategy::Minimal, 0.0,
                  pow_alpha(config.nu, config.path_loss_exp)};
  if (ctx.minimal_routing) {
    ctx.minimal_target_fraction = dense::q_min(1.0, config.path_loss_exp).y_star;
  }
  return ctx;
}

std::pair<int, Endpoint> pick_pair(const Topology& topo, Rng& rng) {
  const int m = topo.size();
  if (topo.architecture == Architecture::CentralSink) {
    return {rng.below_int(m), Endpoint::sink()};
  }
  const int tx = rng.below_int(m);
  int rx = rng.below_int(m - 1);
  if (rx >= tx) ++rx;
  return {tx, Endpoint::node(rx)};
}

namespace {

// Relay choice under MINIMAL routing: the node nearest to the point at radius
// y*(1) * d(tx, sink) on the segment tx -> sink.
std::optional<int> minimal_target(const SlotContext& ctx, int tx) {
  const Topology& topo = ctx.topo;
  if (topo.size() < 2) return std::nullopt;
  const Position tx_pos = topo.nodes[tx];
  const Position target{tx_pos.x * ctx.minimal_target_fraction,
                        tx_pos.y * ctx.minimal_target_fraction};
  int best = -1;
  double best_d2 = 0.0;
  for (int c = 0; c < topo.size(); ++c) {
    if (c == tx) continue;
    const double d2 = distance_sq(topo.nodes[c], target);
    if (best < 0 || d2 < best_d2) {
      best = c;
      best_d2 = d2;
    }
  }
  return best;
}

}  // namespace

SlotOutcome run_slot(const SlotContext& ctx, const BehaviorState& behaviors,
                     FitnessLedger& ledger, std::vector<double>& energy, int tx,
                     Endpoint rx) {
  const Position tx_pos = ctx.topo.nodes[tx];
  const Position rx_pos = ctx.topo.endpoint_position(rx);
  const double direct_pow = pow_alpha(distance(tx_pos, rx_pos), ctx.params.path_loss_exp);

  SlotOutcome out;
  out.tx = tx;
  out.rx = rx;

  if (ctx.minimal_routing) {
    if (const auto relay = minimal_target(ctx, tx)) {
      const Position relay_pos = ctx.topo.nodes[*relay];
      const double tx_leg = pow_alpha(distance(tx_pos, relay_pos), ctx.params.path_loss_exp);
      const double relay_leg = pow_alpha(distance(relay_pos, rx_pos), ctx.params.path_loss_exp);
      // Fall back to direct transmission when relaying costs more in total.
      if (tx_leg + relay_leg <= direct_pow) {
        out.relay = relay;
        out.tx_energy = tx_leg;
        out.relay_energy = relay_leg;
        out.assisted = true;
      }
    }
  } else if (const auto relay =
                 select_relay(ctx.topo, behaviors, tx, rx, ctx.params, ctx.protocol)) {
    const Position relay_pos = ctx.topo.nodes[*relay];
    out.relay = relay;
    out.tx_energy = ctx.protocol == Protocol::P2
                        ? ctx.nu_pow * direct_pow
                        : pow_alpha(distance(tx_pos, relay_pos), ctx.params.path_loss_exp);
    out.relay_energy = pow_alpha(distance(relay_pos, rx_pos), ctx.params.path_loss_exp);
    out.assisted = true;
  }

  if (!out.assisted) out.tx_energy = direct_pow;

  energy[tx] += out.tx_energy;
  if (out.relay) {
    energy[*out.relay] += out.relay_energy;
    ledger.apply(*out.relay, -out.relay_energy);
  }
  if (!out.assisted) {
    const double foregone = (1.0 - ctx.nu_pow) * direct_pow;
    if (foregone != 0.0) ledger.apply(tx, -foregone);
  }
  return out;
}

IndicatorSet indicators_for(const SlotContext& ctx, const BehaviorState& behaviors, int tx,
                            Endpoint rx, int node) {
  IndicatorSet s;
  s.tx_flag = node == tx;
  s.is_cooperator = behaviors.is_cooperator(node);
  s.has_coop_neighbor = !eligible_relays(ctx.topo, behaviors, tx, rx, ctx.params).empty();

  if (node != tx && (rx.is_sink() || node != rx.id)) {
    const Position tx_pos = ctx.topo.nodes[tx];
    const Position rx_pos = ctx.topo.endpoint_position(rx);
    const double d2_pair = distance_sq(tx_pos, rx_pos);
    const double nu_sq = ctx.params.nu * ctx.params.nu;
    const Position pos = ctx.topo.nodes[node];
    s.in_range_of_active = distance_sq(tx_pos, pos) <= nu_sq * d2_pair &&
                           distance_sq(pos, rx_pos) <= d2_pair;
  }
  return s;
}

std::vector<double> run_iteration(const SlotContext& ctx, const PairSchedule& schedule,
                                  const BehaviorState& behaviors, FitnessLedger& ledger,
                                  std::vector<double>& energy) {
  if (schedule.empty()) throw ConfigError("slots per iteration must be >= 1");
  ledger.begin_iteration();
  for (const auto& [tx, rx] : schedule) run_slot(ctx, behaviors, ledger, energy, tx, rx);
  return ledger.delta_current;
}

namespace {

// Cached effect of one slot under a fixed behavior state; replaying applies
// exactly the arithmetic run_slot would.
struct SlotRecord {
  int tx = 0;
  int relay = -1;
  double tx_delta_f = 0.0;
  double tx_energy = 0.0;
  double relay_energy = 0.0;
};

ReplicationResult run_replication(const SimConfig& config, int rep, double y_frac) {
  const std::uint64_t rep_seed = derive_seed(config.seed, kStreamReplication, rep);
  Rng topo_rng(derive_seed(rep_seed, kStreamTopology));
  const Topology topo =
      sample_topology(config.m, config.radius, config.architecture, topo_rng);

  // Slot ownership is TDMA-like: which node transmits in each slot is drawn
  // once per replication and kept for every iteration (and strategy), so a
  // node's transmission load never varies across iterations and
  // G(n) - G(n-1) carries no load noise. Receivers are redrawn per iteration
  // in the ad hoc architecture; the central sink receives deterministically.
  Rng tx_rng(derive_seed(rep_seed, kStreamPairs));
  std::vector<int> tx_owner(config.slots);
  std::uint64_t hash = kFnvOffset;
  for (int t = 0; t < config.slots; ++t) {
    tx_owner[t] = tx_rng.below_int(config.m);
    hash = fnv1a64_int(tx_owner[t], hash);
  }

  PairSchedule schedule(config.slots);
  const bool fresh_partners = config.architecture == Architecture::AdHoc;
  const auto draw_partners = [&](int iteration) {
    if (!fresh_partners) {
      for (int t = 0; t < config.slots; ++t) {
        schedule[t] = {tx_owner[t], Endpoint::sink()};
      }
      return;
    }
    Rng partner_rng(derive_seed(rep_seed, kStreamPartners, iteration));
    for (int t = 0; t < config.slots; ++t) {
      int rx = partner_rng.below_int(config.m - 1);
      if (rx >= tx_owner[t]) ++rx;
      schedule[t] = {tx_owner[t], Endpoint::node(rx)};
      hash = fnv1a64_int(rx, hash);
    }
  };
  draw_partners(0);

  Rng place_rng(derive_seed(rep_seed, kStreamPlacement));

  SlotContext ctx = make_slot_context(topo, config);
  ctx.minimal_target_fraction = ctx.minimal_routing ? y_frac : 0.0;

  const bool constant_all_coop =
      config.strategy == Strategy::Coop || config.strategy == Strategy::Minimal;
  const bool adaptive =
      config.strategy == Strategy::Tft || config.strategy == Strategy::Wsls;

  BehaviorState behaviors(config.m, constant_all_coop);
  FitnessLedger ledger(config.m);
  std::vector<double> energy(config.m, 0.0);

  std::vector<SlotRecord> cache(config.slots);
  BehaviorState cached_for;
  bool cache_valid = false;

  ReplicationResult result;
  result.coop_count.resize(config.iterations);

  for (int n = 0; n < config.iterations; ++n) {
    result.coop_count[n] = behaviors.cooperator_count();
    ledger.begin_iteration();

    if (fresh_partners && n > 0) {
      draw_partners(n);
      cache_valid = false;
    }

    if (cache_valid && behaviors == cached_for) {
      for (const SlotRecord& rec : cache) {
        energy[rec.tx] += rec.tx_energy;
        if (rec.relay >= 0) {
          energy[rec.relay] += rec.relay_energy;
          ledger.apply(rec.relay, -rec.relay_energy);
        }
        if (rec.tx_delta_f != 0.0) ledger.apply(rec.tx, rec.tx_delta_f);
      }
    } else {
      for (int t = 0; t < config.slots; ++t) {
        const auto& [tx, rx] = schedule[t];
        const SlotOutcome out = run_slot(ctx, behaviors, ledger, energy, tx, rx);
        SlotRecord& rec = cache[t];
        rec.tx = out.tx;
        rec.relay = out.relay ? *out.relay : -1;
        rec.tx_energy = out.tx_energy;
        rec.relay_energy = out.relay_energy;
        rec.tx_delta_f = out.assisted ? 0.0 : -((1.0 - ctx.nu_pow) * out.tx_energy);
      }
      cached_for = behaviors;
      cache_valid = true;
    }

    if (adaptive) {
      if (n == 0) {
        behaviors = introduce_initial_cooperator(behaviors, config.placement, topo, place_rng);
      } else if (n + 1 < config.iterations) {
        behaviors = update_behavior(config.strategy, behaviors, ledger.improvement(),
                                    config.tie_break);
      }
    }
  }

  result.radii.reserve(config.m);
  result.energy.reserve(config.m);
  for (int i = 0; i < config.m; ++i) {
    result.radii.push_back(distance(topo.nodes[i], Position{}));
    result.energy.push_back(energy[i] / config.iterations);
  }
  result.final_coop_fraction =
      result.coop_count[config.iterations - 1] / static_cast<double>(config.m);
  result.pair_hash = hash;
  return result;
}

}  // namespace

double SimulationResult::grand_mean_energy() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& rep : replications) {
    for (double e : rep.energy) sum += e;
    count += rep.energy.size();
  }
  return count > 0 ? sum / count : 0.0;
}

double SimulationResult::grand_std_energy() const {
  const double mean = grand_mean_energy();
  double sq = 0.0;
  std::size_t count = 0;
  for (const auto& rep : replications) {
    for (double e : rep.energy) sq += (e - mean) * (e - mean);
    count += rep.energy.size();
  }
  return count > 0 ? std::sqrt(sq / count) : 0.0;
}

std::vector<std::pair<double, double>> SimulationResult::radial_profile(int bins) const {
  std::vector<double> sum(bins, 0.0);
  std::vector<std::size_t> count(bins, 0);
  for (const auto& rep : replications) {
    for (std::size_t i = 0; i < rep.energy.size(); ++i) {
      int b = static_cast<int>(rep.radii[i] / config.radius * bins);
      b = std::clamp(b, 0, bins - 1);
      sum[b] += rep.energy[i];
      count[b] += 1;
    }
  }
  std::vector<std::pair<double, double>> profile;
  profile.reserve(bins);
  for (int b = 0; b < bins; ++b) {
    const double center = (b + 0.5) * config.radius / bins;
    profile.emplace_back(center, count[b] > 0 ? sum[b] / count[b] : 0.0);
  }
  return profile;
}

SimulationResult run_simulation(const SimConfig& config) {
  config.validate();

  double y_frac = 0.0;
  if (config.strategy == Strategy::Minimal) {
    y_frac = dense::q_min(1.0, config.path_loss_exp).y_star;
  }

  SimulationResult result;
  result.config = config;
  result.replications.resize(config.replications);

  const int workers = resolve_workers(config.workers);
  parallel_for_index(config.replications, workers, [&](int rep) {
    result.replications[rep] = run_replication(config, rep, y_frac);
  });

  result.mean_coop_count.assign(config.iterations, 0.0);
  for (const auto& rep : result.replications) {
    for (int n = 0; n < config.iterations; ++n) result.mean_coop_count[n] += rep.coop_count[n];
  }
  for (double& v : result.mean_coop_count) v /= config.replications;
  return result;
}

}  // namespace coopnet
