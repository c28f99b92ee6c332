#include "gadforge/graph.hpp"

#include <algorithm>
#include <string>

#include "gadforge/errors.hpp"

namespace gadforge {

bool AttributedGraph::has_edge(std::int64_t u, std::int64_t v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), static_cast<std::int32_t>(v));
}

void AttributedGraph::validate() const {
  if (static_cast<std::int64_t>(row_offsets.size()) != n + 1) {
    throw DataError("row_offsets length must be n+1");
  }
  if (row_offsets[0] != 0) throw DataError("row_offsets must start at 0");
  for (std::int64_t i = 0; i < n; ++i) {
    if (row_offsets[i + 1] < row_offsets[i]) {
      throw DataError("row_offsets must be non-decreasing");
    }
    std::int32_t prev = -1;
    for (std::int64_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
      const std::int32_t c = col_indices[k];
      if (c < 0 || c >= n) throw DataError("column index out of range");
      if (c == i) throw DataError("self-loop at node " + std::to_string(i));
      if (c <= prev) throw DataError("row " + std::to_string(i) + " not strictly increasing");
      prev = c;
    }
  }
  if (row_offsets[n] != static_cast<std::int64_t>(col_indices.size())) {
    throw DataError("row_offsets[n] must equal the entry count");
  }
  for (std::int64_t u = 0; u < n; ++u) {
    for (const std::int32_t v : neighbors(u)) {
      if (!has_edge(v, u)) {
        throw DataError("adjacency not symmetric at (" + std::to_string(u) + "," +
                        std::to_string(v) + ")");
      }
    }
  }
  if (!features.empty()) {
    if (features.n != n || features.d != d) {
      throw DataError("feature matrix shape does not match graph");
    }
  }
}

NodeLabels::NodeLabels(std::vector<std::uint8_t> values) : labels(std::move(values)) {
  for (const auto y : labels) {
    if (y > 1) throw DataError("labels must be binary");
    anomaly_count += y;
  }
}

std::vector<std::int64_t> NodeLabels::ids_of(std::uint8_t category) const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == category) out.push_back(static_cast<std::int64_t>(i));
  }
  return out;
}

AttributedGraph build_topology(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& edges, std::int64_t n) {
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw DataError("edge endpoint " + std::to_string(u >= n || u < 0 ? u : v) +
                      " outside [0," + std::to_string(n) + ")");
    }
  }

  // Count both directions, skipping self-loops; sort and dedup per row.
  std::vector<std::int64_t> counts(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    ++counts[u + 1];
    ++counts[v + 1];
  }
  for (std::int64_t i = 0; i < n; ++i) counts[i + 1] += counts[i];

  std::vector<std::int32_t> cols(counts[n]);
  std::vector<std::int64_t> cursor(counts.begin(), counts.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    cols[cursor[u]++] = static_cast<std::int32_t>(v);
    cols[cursor[v]++] = static_cast<std::int32_t>(u);
  }

  AttributedGraph g;
  g.n = n;
  g.row_offsets.assign(n + 1, 0);
  g.col_indices.reserve(cols.size());
  for (std::int64_t i = 0; i < n; ++i) {
    const auto begin = cols.begin() + counts[i];
    const auto end = cols.begin() + counts[i + 1];
    std::sort(begin, end);
    const auto last = std::unique(begin, end);
    g.col_indices.insert(g.col_indices.end(), begin, last);
    g.row_offsets[i + 1] = static_cast<std::int64_t>(g.col_indices.size());
  }
  return g;
}

BuildResult build_graph(const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                        std::int64_t n, FeatureMatrix features,
                        std::vector<std::uint8_t> labels) {
  if (features.n != n) {
    throw DataError("feature matrix has " + std::to_string(features.n) +
                    " rows, expected " + std::to_string(n));
  }
  if (static_cast<std::int64_t>(labels.size()) != n) {
    throw DataError("label array has " + std::to_string(labels.size()) +
                    " entries, expected " + std::to_string(n));
  }
  BuildResult out;
  out.graph = build_topology(edges, n);
  out.graph.d = features.d;
  out.graph.features = std::move(features);
  out.labels = NodeLabels(std::move(labels));
  out.graph.validate();
  return out;
}

std::vector<std::int64_t> degree_sequence(const AttributedGraph& g) {
  std::vector<std::int64_t> deg(g.n);
  for (std::int64_t i = 0; i < g.n; ++i) deg[i] = g.row_offsets[i + 1] - g.row_offsets[i];
  return deg;
}

std::vector<std::pair<std::int64_t, std::int64_t>> edge_list(const AttributedGraph& g) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  out.reserve(g.edge_count());
  for (std::int64_t u = 0; u < g.n; ++u) {
    for (const std::int32_t v : g.neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

FeatureMatrix gather_rows(const FeatureMatrix& source, std::span<const std::int64_t> ids) {
  FeatureMatrix out(static_cast<std::int64_t>(ids.size()), source.d);
  for (std::size_t r = 0; r < ids.size(); ++r) {
    const auto src = source.row(ids[r]);
    std::copy(src.begin(), src.end(), out.row(static_cast<std::int64_t>(r)).begin());
  }
  return out;
}

}  // namespace gadforge
