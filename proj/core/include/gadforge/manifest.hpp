#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

namespace gadforge {

// Provenance record emitted next to every dataset variant. A variant is
// reproducible from its manifest alone: source + transform + parameters +
// seed pin the computation, the checksums certify the bytes.
struct VariantManifest {
  std::string source_id;
  std::string transform;  // ingest | expand | ratio_adjust | inject_missing | impute
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::map<std::string, std::string> content_checksums;
  // Transform-specific payload (expansion validation record, ingest remap
  // pointer, realized missing ratios, ...).
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
  static VariantManifest from_json(const nlohmann::json& j);

  void save(const std::filesystem::path& path) const;
  static VariantManifest load(const std::filesystem::path& path);
};

}  // namespace gadforge
