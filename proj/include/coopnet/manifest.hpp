#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace coopnet {

inline constexpr const char* kToolName = "coopnet";
inline constexpr const char* kToolVersion = "0.1.0";

// Run provenance: effective config snapshot, seed, wall-clock duration and a
// checksum per output file. A run is reproducible from its manifest alone.
class RunManifest {
 public:
  RunManifest(std::string subcommand, std::uint64_t seed);

  void set_config(nlohmann::ordered_json config);
  void add_output(const std::string& name, const std::string& content);
  void set_duration_seconds(double seconds);

  nlohmann::ordered_json json() const;
  void write(const std::filesystem::path& directory) const;

 private:
  nlohmann::ordered_json doc_;
};

}  // namespace coopnet
