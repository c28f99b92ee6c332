#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "gadforge/graph.hpp"

namespace gadforge {

// File formats:
//   edges.tsv     u<TAB>v, one undirected edge per line (canonical u < v on
//                 write), '#' starts a comment line.
//   features.bin  16-byte header: magic "GADF", u32 n, u32 d, u32 reserved(0),
//                 all little-endian, then n*d float32 row-major.
//   labels.tsv    node_id<TAB>{0|1}, one per line.
//   mask.bin      magic "GADM", u32 cell count, then (u32 node, u32 dim)
//                 pairs, little-endian, sorted lexicographically.
//   scores.tsv    node_id<TAB>score.

std::vector<std::pair<std::int64_t, std::int64_t>> read_edge_list(
    const std::filesystem::path& path);
void write_edge_list(const std::filesystem::path& path,
                     const std::vector<std::pair<std::int64_t, std::int64_t>>& edges);

FeatureMatrix read_features(const std::filesystem::path& path);
void write_features(const std::filesystem::path& path, const FeatureMatrix& m);

// Returns (node_id, label) pairs in file order; validation is the caller's job.
std::vector<std::pair<std::int64_t, std::uint8_t>> read_label_pairs(
    const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const NodeLabels& labels);

std::vector<std::pair<std::uint32_t, std::uint32_t>> read_mask_cells(
    const std::filesystem::path& path);
void write_mask_cells(const std::filesystem::path& path,
                      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& cells);

void write_scores(const std::filesystem::path& path, const std::vector<double>& scores);
std::vector<double> read_scores(const std::filesystem::path& path);

// FNV-1a 64 over the raw bytes, rendered as "fnv1a64:<16 hex digits>".
std::string checksum_bytes(const void* data, std::size_t size);
std::string checksum_file(const std::filesystem::path& path);

// Dataset directory convention: edges.tsv + features.bin + labels.tsv +
// manifest.json (+ mask.bin for incomplete variants).
struct DatasetPaths {
  std::filesystem::path dir;
  std::filesystem::path edges() const { return dir / "edges.tsv"; }
  std::filesystem::path features() const { return dir / "features.bin"; }
  std::filesystem::path labels() const { return dir / "labels.tsv"; }
  std::filesystem::path manifest() const { return dir / "manifest.json"; }
  std::filesystem::path mask() const { return dir / "mask.bin"; }
  std::filesystem::path remap() const { return dir / "remap.tsv"; }
};

struct Dataset {
  AttributedGraph graph;
  NodeLabels labels;
};

Dataset load_dataset(const std::filesystem::path& dir);

// Writes the three data files and returns their checksums keyed by file name.
std::vector<std::pair<std::string, std::string>> write_dataset_files(
    const std::filesystem::path& dir, const AttributedGraph& graph, const NodeLabels& labels);

}  // namespace gadforge
