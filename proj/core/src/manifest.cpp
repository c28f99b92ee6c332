#include "gadforge/manifest.hpp"

#include <fstream>

#include "gadforge/errors.hpp"

namespace gadforge {

nlohmann::json VariantManifest::to_json() const {
  nlohmann::json j;
  j["source_id"] = source_id;
  j["transform"] = transform;
  j["parameters"] = parameters;
  j["seed"] = seed;
  j["content_checksums"] = content_checksums;
  if (!extra.empty()) j["extra"] = extra;
  return j;
}

VariantManifest VariantManifest::from_json(const nlohmann::json& j) {
  VariantManifest m;
  m.source_id = j.at("source_id").get<std::string>();
  m.transform = j.at("transform").get<std::string>();
  m.parameters = j.value("parameters", nlohmann::json::object());
  m.seed = j.at("seed").get<std::uint64_t>();
  m.content_checksums =
      j.value("content_checksums", std::map<std::string, std::string>{});
  m.extra = j.value("extra", nlohmann::json::object());
  return m;
}

void VariantManifest::save(const std::filesystem::path& path) const {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw DataError("cannot write manifest " + path.string());
  out << to_json().dump(2) << '\n';
}

VariantManifest VariantManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed manifest " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

}  // namespace gadforge
