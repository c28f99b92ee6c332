#include "gadforge/ratio_adjust.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gadforge/errors.hpp"
#include "gadforge/io.hpp"
#include "gadforge/rng.hpp"
#include "gadforge/stats.hpp"

namespace gadforge {

const char* to_string(RetentionKind kind) {
  switch (kind) {
    case RetentionKind::core_cluster: return "core";
    case RetentionKind::edge_cluster: return "edge";
    case RetentionKind::random: return "random";
  }
  return "unknown";
}

RetentionKind retention_kind_from_string(const std::string& name) {
  if (name == "core" || name == "core_cluster") return RetentionKind::core_cluster;
  if (name == "edge" || name == "edge_cluster") return RetentionKind::edge_cluster;
  if (name == "random") return RetentionKind::random;
  throw UsageError("unknown retention strategy '" + name + "'");
}

std::vector<std::int64_t> select_retained(const FeatureMatrix& anomaly_features,
                                          const RetentionStrategy& strategy,
                                          std::int64_t target_count, std::uint64_t seed) {
  const std::int64_t m = anomaly_features.n;
  if (target_count < 1 || target_count > m) {
    throw std::invalid_argument("select_retained: target_count " +
                                std::to_string(target_count) + " outside [1," +
                                std::to_string(m) + "]");
  }
  if (strategy.cluster_k < 1) {
    throw std::invalid_argument("select_retained: cluster_k must be >= 1");
  }

  std::vector<std::int64_t> retained;
  if (strategy.kind == RetentionKind::random) {
    std::vector<std::int64_t> ids(m);
    std::iota(ids.begin(), ids.end(), 0);
    RngStream stream(seed, "retain.random");
    stream.shuffle(ids);
    retained.assign(ids.begin(), ids.begin() + target_count);
  } else {
    const std::int64_t k = std::min<std::int64_t>(strategy.cluster_k, m);
    const ClusterAssignment clusters = kmeans(anomaly_features, k, seed);

    // Rank clusters by size; ties resolve to the lower cluster index.
    std::vector<std::int64_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    const bool largest_first = strategy.kind == RetentionKind::core_cluster;
    std::stable_sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
      if (clusters.sizes[a] != clusters.sizes[b]) {
        return largest_first ? clusters.sizes[a] > clusters.sizes[b]
                             : clusters.sizes[a] < clusters.sizes[b];
      }
      return a < b;
    });

    std::int64_t remaining = target_count;
    for (const std::int64_t c : order) {
      if (remaining == 0) break;
      std::vector<std::int64_t> members;
      for (std::int64_t i = 0; i < m; ++i) {
        if (clusters.assignment[i] == c) members.push_back(i);
      }
      const std::int64_t take = std::min<std::int64_t>(remaining, members.size());
      retained.insert(retained.end(), members.begin(), members.begin() + take);
      remaining -= take;
    }
  }
  std::sort(retained.begin(), retained.end());
  return retained;
}

RatioAdjustResult adjust_ratio(const AttributedGraph& g, const NodeLabels& labels,
                               double target_ratio, const RetentionStrategy& strategy,
                               std::uint64_t seed) {
  const std::int64_t n = g.n;
  const double current_ratio = labels.anomaly_ratio();
  if (target_ratio > current_ratio) {
    throw std::invalid_argument("adjust_ratio: target ratio " + std::to_string(target_ratio) +
                                " above current " + std::to_string(current_ratio));
  }
  const std::int64_t target_count =
      std::max<std::int64_t>(1, std::llround(target_ratio * static_cast<double>(n)));
  if (target_count > labels.anomaly_count) {
    throw std::invalid_argument("adjust_ratio: target count exceeds anomaly count");
  }

  const auto anomaly_ids = labels.ids_of(1);
  const FeatureMatrix anomaly_rows = gather_rows(g.features, anomaly_ids);
  const auto retained_rows = select_retained(anomaly_rows, strategy, target_count, seed);

  RatioAdjustResult result;
  result.retained_ids.reserve(retained_rows.size());
  for (const std::int64_t r : retained_rows) result.retained_ids.push_back(anomaly_ids[r]);

  std::vector<bool> retained_mask(n, false);
  for (const std::int64_t id : result.retained_ids) retained_mask[id] = true;
  for (const std::int64_t id : anomaly_ids) {
    if (!retained_mask[id]) result.demoted_ids.push_back(id);
  }

  // Global normal mean (fallback) from the frozen original matrix.
  const std::int64_t d = g.d;
  std::vector<double> normal_mean(d, 0.0);
  std::int64_t normal_count = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (labels.labels[i] != 0) continue;
    ++normal_count;
    const auto row = g.features.row(i);
    for (std::int64_t j = 0; j < d; ++j) normal_mean[j] += row[j];
  }
  if (normal_count == 0) throw DataError("adjust_ratio: graph has no normal nodes");
  for (double& v : normal_mean) v /= static_cast<double>(normal_count);

  // Demotion: label flip plus attribute rewrite from originally-normal
  // neighbors. The neighbor filter uses original labels, so conversion order
  // cannot matter.
  result.features = g.features;
  std::vector<std::uint8_t> new_labels(labels.labels);
  std::vector<double> acc(d);
  for (const std::int64_t id : result.demoted_ids) {
    new_labels[id] = 0;
    std::fill(acc.begin(), acc.end(), 0.0);
    std::int64_t neighbor_count = 0;
    for (const std::int32_t v : g.neighbors(id)) {
      if (labels.labels[v] != 0) continue;
      ++neighbor_count;
      const auto row = g.features.row(v);
      for (std::int64_t j = 0; j < d; ++j) acc[j] += row[j];
    }
    auto dst = result.features.row(id);
    if (neighbor_count > 0) {
      for (std::int64_t j = 0; j < d; ++j) {
        dst[j] = static_cast<float>(acc[j] / static_cast<double>(neighbor_count));
      }
    } else {
      for (std::int64_t j = 0; j < d; ++j) dst[j] = static_cast<float>(normal_mean[j]);
    }
  }
  result.labels = NodeLabels(std::move(new_labels));

  VariantManifest manifest;
  manifest.transform = "ratio_adjust";
  manifest.seed = seed;
  manifest.parameters = {
      {"target_ratio", target_ratio},
      {"strategy", to_string(strategy.kind)},
      {"cluster_k", strategy.cluster_k},
      {"retained_count", static_cast<std::int64_t>(result.retained_ids.size())},
  };
  // The retained set is pinned by checksum so reruns are verifiable.
  std::string retained_bytes;
  for (const std::int64_t id : result.retained_ids) {
    retained_bytes += std::to_string(id);
    retained_bytes += '\n';
  }
  manifest.extra = {
      {"retained_set_checksum", checksum_bytes(retained_bytes.data(), retained_bytes.size())},
      {"demoted_count", static_cast<std::int64_t>(result.demoted_ids.size())},
  };
  result.manifest = std::move(manifest);
  return result;
}

}  // namespace gadforge
