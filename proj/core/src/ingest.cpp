#include "gadforge/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "gadforge/errors.hpp"
#include "gadforge/io.hpp"

namespace gadforge {

RawDataset parse_dataset(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw DataError("cannot open raw manifest " + manifest_path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed raw manifest " + manifest_path.string() + ": " + e.what());
  }

  const auto base = manifest_path.parent_path();
  auto resolve = [&](const std::string& key) {
    std::filesystem::path p = j.at(key).get<std::string>();
    if (p.is_relative()) p = base / p;
    if (!std::filesystem::exists(p)) throw DataError("missing file " + p.string());
    return p;
  };

  RawDataset raw;
  raw.edge_path = resolve("edge_path");
  raw.feature_path = resolve("feature_path");
  raw.label_path = resolve("label_path");
  raw.declared_n = j.at("n").get<std::int64_t>();
  raw.declared_d = j.at("d").get<std::int64_t>();

  const FeatureMatrix features = read_features(raw.feature_path);
  if (features.n != raw.declared_n || features.d != raw.declared_d) {
    throw DataError("feature file declares " + std::to_string(features.n) + "x" +
                    std::to_string(features.d) + ", manifest declares " +
                    std::to_string(raw.declared_n) + "x" + std::to_string(raw.declared_d));
  }
  const auto label_pairs = read_label_pairs(raw.label_path);
  if (static_cast<std::int64_t>(label_pairs.size()) != raw.declared_n) {
    throw DataError("label file has " + std::to_string(label_pairs.size()) +
                    " rows, expected " + std::to_string(raw.declared_n));
  }
  for (const auto& [id, y] : label_pairs) {
    (void)y;
    if (id < 0 || id >= raw.declared_n) {
      throw DataError("label node id " + std::to_string(id) + " out of range");
    }
  }
  return raw;
}

FeatureMatrix minmax_normalize(const FeatureMatrix& features) {
  const std::int64_t n = features.n;
  const std::int64_t d = features.d;
  for (const float v : features.values) {
    if (!std::isfinite(v)) throw DataError("non-finite feature value");
  }
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (std::int64_t i = 0; i < n; ++i) {
    const auto row = features.row(i);
    for (std::int64_t j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], static_cast<double>(row[j]));
      hi[j] = std::max(hi[j], static_cast<double>(row[j]));
    }
  }
  FeatureMatrix out(n, d);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto src = features.row(i);
    auto dst = out.row(i);
    for (std::int64_t j = 0; j < d; ++j) {
      const double range = hi[j] - lo[j];
      dst[j] = range > 0.0
                   ? static_cast<float>((static_cast<double>(src[j]) - lo[j]) / range)
                   : 0.0f;
    }
  }
  return out;
}

IngestResult preprocess(const RawDataset& raw) {
  const auto edges = read_edge_list(raw.edge_path);
  const FeatureMatrix features = read_features(raw.feature_path);
  const auto label_pairs = read_label_pairs(raw.label_path);
  const std::int64_t n = raw.declared_n;

  // Label consistency: every node exactly one binary label; repeated rows
  // tolerated only when they agree.
  std::vector<std::int8_t> label_of(n, -1);
  for (const auto& [id, y] : label_pairs) {
    if (label_of[id] >= 0 && label_of[id] != static_cast<std::int8_t>(y)) {
      throw DataError("conflicting labels for node " + std::to_string(id));
    }
    label_of[id] = static_cast<std::int8_t>(y);
  }
  for (std::int64_t i = 0; i < n; ++i) {
    if (label_of[i] < 0) throw DataError("node " + std::to_string(i) + " has no label");
  }

  // Clean topology over the declared id space, then drop isolated nodes and
  // compact ids.
  AttributedGraph full = build_topology(edges, n);
  std::vector<std::int64_t> kept_ids;
  kept_ids.reserve(n);
  std::vector<std::int64_t> remap(n, -1);
  for (std::int64_t i = 0; i < n; ++i) {
    if (full.degree(i) > 0) {
      remap[i] = static_cast<std::int64_t>(kept_ids.size());
      kept_ids.push_back(i);
    }
  }
  if (kept_ids.empty()) throw DataError("no nodes remain after isolated-node removal");

  const std::int64_t kept_n = static_cast<std::int64_t>(kept_ids.size());
  AttributedGraph g;
  g.n = kept_n;
  g.d = features.d;
  g.row_offsets.assign(kept_n + 1, 0);
  g.col_indices.reserve(full.col_indices.size());
  for (std::int64_t new_i = 0; new_i < kept_n; ++new_i) {
    for (const std::int32_t v : full.neighbors(kept_ids[new_i])) {
      g.col_indices.push_back(static_cast<std::int32_t>(remap[v]));
    }
    g.row_offsets[new_i + 1] = static_cast<std::int64_t>(g.col_indices.size());
  }

  // Normalization statistics come from the retained population.
  g.features = minmax_normalize(gather_rows(features, kept_ids));

  std::vector<std::uint8_t> labels(kept_n);
  for (std::int64_t new_i = 0; new_i < kept_n; ++new_i) {
    labels[new_i] = static_cast<std::uint8_t>(label_of[kept_ids[new_i]]);
  }

  IngestResult result;
  result.graph = std::move(g);
  result.graph.validate();
  result.labels = NodeLabels(std::move(labels));
  result.kept_ids = std::move(kept_ids);

  VariantManifest manifest;
  manifest.source_id = raw.edge_path.parent_path().string();
  manifest.transform = "ingest";
  manifest.parameters = {
      {"declared_n", raw.declared_n},
      {"declared_d", raw.declared_d},
      {"minmax_after_isolated_removal", true},
  };
  manifest.seed = 0;  // deterministic transform
  manifest.extra = {
      {"retained_nodes", result.graph.n},
      {"removed_isolated", raw.declared_n - result.graph.n},
      {"edges", result.graph.edge_count()},
      {"anomaly_count", result.labels.anomaly_count},
  };
  result.manifest = std::move(manifest);
  return result;
}

}  // namespace gadforge
