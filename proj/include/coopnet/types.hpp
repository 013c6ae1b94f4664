#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace coopnet {

enum class Architecture { AdHoc, CentralSink };
enum class Strategy { Def, Coop, Tft, Wsls, Minimal };
enum class Protocol { P1, P2 };
enum class Placement { RandomNode, AtRadius };

const char* to_string(Architecture a);
const char* to_string(Strategy s);
const char* to_string(Protocol p);

struct Position {
  double x = 0.0;
  double y = 0.0;
};

// Receiver endpoint of a transmission: a node id, or the central sink.
struct Endpoint {
  static constexpr int kSinkId = -1;
  int id = kSinkId;

  static Endpoint sink() { return {}; }
  static Endpoint node(int node_id) { return Endpoint{node_id}; }
  bool is_sink() const { return id == kSinkId; }
  bool operator==(const Endpoint&) const = default;
};

struct Topology {
  double radius = 1.0;
  Architecture architecture = Architecture::AdHoc;
  std::vector<Position> nodes;
  std::optional<Position> sink;  // present iff CentralSink, fixed at the origin

  int size() const { return static_cast<int>(nodes.size()); }
  Position endpoint_position(Endpoint e) const {
    return e.is_sink() ? *sink : nodes[e.id];
  }
};

// Per-node cooperator/defector flags in force during one iteration.
class BehaviorState {
 public:
  BehaviorState() = default;
  explicit BehaviorState(int m, bool cooperate = false)
      : flags_(m, cooperate ? 1 : 0), coop_count_(cooperate ? m : 0) {}

  int size() const { return static_cast<int>(flags_.size()); }
  bool is_cooperator(int node) const { return flags_[node] != 0; }
  int cooperator_count() const { return coop_count_; }

  void set(int node, bool cooperate) {
    if (is_cooperator(node) == cooperate) return;
    coop_count_ += cooperate ? 1 : -1;
    flags_[node] = cooperate ? 1 : 0;
  }

  bool operator==(const BehaviorState&) const = default;

 private:
  std::vector<std::uint8_t> flags_;
  int coop_count_ = 0;
};

}  // namespace coopnet
