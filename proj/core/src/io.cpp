#include "gadforge/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "gadforge/errors.hpp"

namespace gadforge {

namespace {

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, mode);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

std::int64_t parse_int(std::string_view token, const std::filesystem::path& path,
                       std::size_t line_no) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw DataError(path.string() + ":" + std::to_string(line_no) + ": bad integer '" +
                    std::string(token) + "'");
  }
  return value;
}

void put_u32(std::ofstream& out, std::uint32_t v) {
  std::array<unsigned char, 4> b{static_cast<unsigned char>(v & 0xff),
                                 static_cast<unsigned char>((v >> 8) & 0xff),
                                 static_cast<unsigned char>((v >> 16) & 0xff),
                                 static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b.data()), 4);
}

std::uint32_t get_u32(std::ifstream& in, const std::filesystem::path& path) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 4)) {
    throw DataError("truncated binary file " + path.string());
  }
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

}  // namespace

std::vector<std::pair<std::int64_t, std::int64_t>> read_edge_list(
    const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::in);
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected u<TAB>v");
    }
    edges.emplace_back(parse_int(std::string_view(line).substr(0, tab), path, line_no),
                       parse_int(std::string_view(line).substr(tab + 1), path, line_no));
  }
  return edges;
}

void write_edge_list(const std::filesystem::path& path,
                     const std::vector<std::pair<std::int64_t, std::int64_t>>& edges) {
  auto out = open_out(path, std::ios::out);
  for (const auto& [u, v] : edges) {
    out << u << '\t' << v << '\n';
  }
}

FeatureMatrix read_features(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || std::memcmp(magic.data(), "GADF", 4) != 0) {
    throw DataError(path.string() + ": bad feature-file magic");
  }
  const std::uint32_t n = get_u32(in, path);
  const std::uint32_t d = get_u32(in, path);
  get_u32(in, path);  // reserved
  FeatureMatrix m(n, d);
  const std::size_t bytes = m.values.size() * sizeof(float);
  if (!in.read(reinterpret_cast<char*>(m.values.data()), static_cast<std::streamsize>(bytes))) {
    throw DataError(path.string() + ": truncated feature payload");
  }
  return m;
}

void write_features(const std::filesystem::path& path, const FeatureMatrix& m) {
  auto out = open_out(path, std::ios::binary);
  out.write("GADF", 4);
  put_u32(out, static_cast<std::uint32_t>(m.n));
  put_u32(out, static_cast<std::uint32_t>(m.d));
  put_u32(out, 0);
  out.write(reinterpret_cast<const char*>(m.values.data()),
            static_cast<std::streamsize>(m.values.size() * sizeof(float)));
}

std::vector<std::pair<std::int64_t, std::uint8_t>> read_label_pairs(
    const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::in);
  std::vector<std::pair<std::int64_t, std::uint8_t>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected node_id<TAB>label");
    }
    const std::int64_t id = parse_int(std::string_view(line).substr(0, tab), path, line_no);
    const std::int64_t y = parse_int(std::string_view(line).substr(tab + 1), path, line_no);
    if (y != 0 && y != 1) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": non-binary label " +
                      std::to_string(y));
    }
    pairs.emplace_back(id, static_cast<std::uint8_t>(y));
  }
  return pairs;
}

void write_labels(const std::filesystem::path& path, const NodeLabels& labels) {
  auto out = open_out(path, std::ios::out);
  for (std::size_t i = 0; i < labels.labels.size(); ++i) {
    out << i << '\t' << static_cast<int>(labels.labels[i]) << '\n';
  }
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> read_mask_cells(
    const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || std::memcmp(magic.data(), "GADM", 4) != 0) {
    throw DataError(path.string() + ": bad mask-file magic");
  }
  const std::uint32_t count = get_u32(in, path);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cells(count);
  for (auto& [node, dim] : cells) {
    node = get_u32(in, path);
    dim = get_u32(in, path);
  }
  return cells;
}

void write_mask_cells(const std::filesystem::path& path,
                      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& cells) {
  auto out = open_out(path, std::ios::binary);
  out.write("GADM", 4);
  put_u32(out, static_cast<std::uint32_t>(cells.size()));
  for (const auto& [node, dim] : cells) {
    put_u32(out, node);
    put_u32(out, dim);
  }
}

void write_scores(const std::filesystem::path& path, const std::vector<double>& scores) {
  auto out = open_out(path, std::ios::out);
  char buf[40];
  for (std::size_t i = 0; i < scores.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", scores[i]);
    out << i << '\t' << buf << '\n';
  }
}

std::vector<double> read_scores(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::in);
  std::vector<double> scores;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw DataError(path.string() + ": expected id<TAB>score");
    scores.push_back(std::stod(line.substr(tab + 1)));
  }
  return scores;
}

std::string checksum_bytes(const void* data, std::size_t size) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string checksum_file(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char chunk[1 << 16];
  while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
    const auto got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(chunk[i]);
      h *= 0x100000001b3ULL;
    }
    if (got < static_cast<std::streamsize>(sizeof chunk)) break;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Dataset load_dataset(const std::filesystem::path& dir) {
  DatasetPaths paths{dir};
  const auto edges = read_edge_list(paths.edges());
  auto features = read_features(paths.features());
  const auto pairs = read_label_pairs(paths.labels());
  const std::int64_t n = features.n;
  std::vector<std::uint8_t> labels(n, 0);
  std::vector<bool> seen(n, false);
  for (const auto& [id, y] : pairs) {
    if (id < 0 || id >= n) throw DataError(paths.labels().string() + ": node id out of range");
    if (seen[id]) throw DataError(paths.labels().string() + ": duplicate label for node " +
                                  std::to_string(id));
    seen[id] = true;
    labels[id] = y;
  }
  if (static_cast<std::int64_t>(pairs.size()) != n) {
    throw DataError(paths.labels().string() + ": expected " + std::to_string(n) +
                    " labels, found " + std::to_string(pairs.size()));
  }
  auto built = build_graph(edges, n, std::move(features), std::move(labels));
  return Dataset{std::move(built.graph), std::move(built.labels)};
}

std::vector<std::pair<std::string, std::string>> write_dataset_files(
    const std::filesystem::path& dir, const AttributedGraph& graph, const NodeLabels& labels) {
  DatasetPaths paths{dir};
  std::filesystem::create_directories(dir);
  write_edge_list(paths.edges(), edge_list(graph));
  write_features(paths.features(), graph.features);
  write_labels(paths.labels(), labels);
  return {
      {"edges.tsv", checksum_file(paths.edges())},
      {"features.bin", checksum_file(paths.features())},
      {"labels.tsv", checksum_file(paths.labels())},
  };
}

}  // namespace gadforge
