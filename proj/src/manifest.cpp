#include "coopnet/manifest.hpp"

#include "coopnet/csv.hpp"
#include "coopnet/hash.hpp"

namespace coopnet {

RunManifest::RunManifest(std::string subcommand, std::uint64_t seed) {
  doc_["tool"] = kToolName;
  doc_["version"] = kToolVersion;
  doc_["subcommand"] = std::move(subcommand);
  doc_["seed"] = seed;
  doc_["config"] = nlohmann::ordered_json::object();
  doc_["duration_seconds"] = 0.0;
  doc_["outputs"] = nlohmann::ordered_json::array();
}

void RunManifest::set_config(nlohmann::ordered_json config) {
  doc_["config"] = std::move(config);
}

void RunManifest::add_output(const std::string& name, const std::string& content) {
  nlohmann::ordered_json entry;
  entry["file"] = name;
  entry["bytes"] = content.size();
  entry["fnv1a64"] = to_hex(fnv1a64(content));
  doc_["outputs"].push_back(std::move(entry));
}

void RunManifest::set_duration_seconds(double seconds) {
  doc_["duration_seconds"] = seconds;
}

nlohmann::ordered_json RunManifest::json() const { return doc_; }

void RunManifest::write(const std::filesystem::path& directory) const {
  write_file_atomic(directory / "manifest.json", doc_.dump(2) + "\n");
}

}  // namespace coopnet
