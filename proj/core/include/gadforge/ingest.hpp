#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "gadforge/graph.hpp"
#include "gadforge/manifest.hpp"

namespace gadforge {

// Handles to a raw dataset directory, declared via a small JSON manifest:
//   { "edge_path": ..., "feature_path": ..., "label_path": ..., "n": N, "d": D }
// Relative paths resolve against the manifest's directory.
struct RawDataset {
  std::filesystem::path edge_path;
  std::filesystem::path feature_path;
  std::filesystem::path label_path;
  std::int64_t declared_n = 0;
  std::int64_t declared_d = 0;
};

// Validates existence and declared shapes (feature header, label row count,
// binary label values). Throws DataError on any mismatch.
RawDataset parse_dataset(const std::filesystem::path& manifest_path);

// Per-dimension min-max normalization to [0,1]; constant columns map to
// all-zeros. Output is stored at 32-bit precision.
FeatureMatrix minmax_normalize(const FeatureMatrix& features);

struct IngestResult {
  AttributedGraph graph;
  NodeLabels labels;
  VariantManifest manifest;
  std::vector<std::int64_t> kept_ids;  // original id of each retained node
};

// Standardized cleaning pass: drop self-loops and duplicate edges, symmetrize,
// remove isolated nodes and compact ids, check label consistency, then
// min-max normalize the retained rows.
IngestResult preprocess(const RawDataset& raw);

}  // namespace gadforge
