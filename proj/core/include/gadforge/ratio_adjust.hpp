#pragma once

#include <cstdint>
#include <vector>

#include "gadforge/graph.hpp"
#include "gadforge/manifest.hpp"

namespace gadforge {

enum class RetentionKind { core_cluster, edge_cluster, random };

struct RetentionStrategy {
  RetentionKind kind = RetentionKind::random;
  int cluster_k = 5;
};

const char* to_string(RetentionKind kind);
RetentionKind retention_kind_from_string(const std::string& name);

// Chooses which anomalies to keep. Cluster strategies run k-means on the
// anomaly rows: core keeps the largest cluster first, edge the smallest, both
// spilling into the next cluster by size when short (ties broken by lower
// cluster index, truncation within a cluster by ascending row index).
// Returns row indices into anomaly_features, sorted ascending.
std::vector<std::int64_t> select_retained(const FeatureMatrix& anomaly_features,
                                          const RetentionStrategy& strategy,
                                          std::int64_t target_count, std::uint64_t seed);

struct RatioAdjustResult {
  NodeLabels labels;
  FeatureMatrix features;
  VariantManifest manifest;
  std::vector<std::int64_t> retained_ids;  // node ids keeping label 1
  std::vector<std::int64_t> demoted_ids;
};

// Lowers the anomaly ratio to target_ratio by demoting anomalies: demoted
// nodes get label 0 and their attributes replaced by the mean of their
// originally-normal neighbors (or the global normal mean when none exists).
// Topology, retained rows, and originally-normal rows are untouched. All
// demoted rows are recomputed in one pass from the frozen original matrix.
RatioAdjustResult adjust_ratio(const AttributedGraph& g, const NodeLabels& labels,
                               double target_ratio, const RetentionStrategy& strategy,
                               std::uint64_t seed);

}  // namespace gadforge
