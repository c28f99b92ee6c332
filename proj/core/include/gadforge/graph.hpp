#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace gadforge {

// Dense row-major matrix of 32-bit reals. Node attributes are stored at this
// precision everywhere; heavier arithmetic promotes to double internally.
struct FeatureMatrix {
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::vector<float> values;  // n * d, row-major

  FeatureMatrix() = default;
  FeatureMatrix(std::int64_t n, std::int64_t d)
      : n(n), d(d), values(static_cast<std::size_t>(n) * d, 0.0f) {}

  float at(std::int64_t i, std::int64_t j) const {
    return values[static_cast<std::size_t>(i) * d + j];
  }
  float& at(std::int64_t i, std::int64_t j) {
    return values[static_cast<std::size_t>(i) * d + j];
  }
  std::span<const float> row(std::int64_t i) const {
    return {values.data() + static_cast<std::size_t>(i) * d,
            static_cast<std::size_t>(d)};
  }
  std::span<float> row(std::int64_t i) {
    return {values.data() + static_cast<std::size_t>(i) * d,
            static_cast<std::size_t>(d)};
  }
  bool empty() const { return values.empty(); }
};

// Immutable attributed graph in CSR form, undirected convention: every edge
// (u,v) is stored in both rows, columns sorted and unique, no self-loops.
// Construction is single-writer; once built the structure is safe to read
// from any number of threads.
struct AttributedGraph {
  std::int64_t n = 0;
  std::vector<std::int64_t> row_offsets;  // length n+1
  std::vector<std::int32_t> col_indices;  // sorted ascending per row
  FeatureMatrix features;                 // n x d
  std::int64_t d = 0;

  std::int64_t directed_entries() const { return row_offsets.empty() ? 0 : row_offsets[n]; }
  std::int64_t edge_count() const { return directed_entries() / 2; }
  std::int64_t degree(std::int64_t i) const { return row_offsets[i + 1] - row_offsets[i]; }

  std::span<const std::int32_t> neighbors(std::int64_t i) const {
    return {col_indices.data() + row_offsets[i],
            static_cast<std::size_t>(row_offsets[i + 1] - row_offsets[i])};
  }

  bool has_edge(std::int64_t u, std::int64_t v) const;

  // Throws DataError if any CSR invariant is violated (self-loop, duplicate,
  // unsorted row, asymmetry, offset inconsistency, feature shape mismatch).
  void validate() const;
};

// Binary node labels: 0 normal, 1 anomalous.
struct NodeLabels {
  std::vector<std::uint8_t> labels;
  std::int64_t anomaly_count = 0;

  NodeLabels() = default;
  explicit NodeLabels(std::vector<std::uint8_t> values);

  std::int64_t size() const { return static_cast<std::int64_t>(labels.size()); }
  double anomaly_ratio() const {
    return labels.empty() ? 0.0 : static_cast<double>(anomaly_count) / labels.size();
  }
  std::vector<std::int64_t> ids_of(std::uint8_t category) const;
};

struct BuildResult {
  AttributedGraph graph;
  NodeLabels labels;
};

// Builds a CSR graph from an arbitrary edge list. Self-loops and duplicate
// edges are dropped silently; the result is symmetrized (undirected).
// Throws DataError on node ids >= n or feature/label shape mismatch.
BuildResult build_graph(const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                        std::int64_t n, FeatureMatrix features,
                        std::vector<std::uint8_t> labels);

// Topology-only variant used when attributes are attached later.
AttributedGraph build_topology(const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                               std::int64_t n);

std::vector<std::int64_t> degree_sequence(const AttributedGraph& g);

// Edge list with u < v, row-major order; inverse of building from one.
std::vector<std::pair<std::int64_t, std::int64_t>> edge_list(const AttributedGraph& g);

// Rows of `source` selected by `ids`, in the given order.
FeatureMatrix gather_rows(const FeatureMatrix& source, std::span<const std::int64_t> ids);

}  // namespace gadforge
