#include "gadforge/missingness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "gadforge/errors.hpp"
#include "gadforge/rng.hpp"

namespace gadforge {

bool MissingMask::contains(std::uint32_t node, std::uint32_t dim) const {
  return std::binary_search(cells.begin(), cells.end(), std::make_pair(node, dim));
}

const char* to_string(ImputeStrategy strategy) {
  switch (strategy) {
    case ImputeStrategy::mean: return "mean";
    case ImputeStrategy::median: return "median";
    case ImputeStrategy::neighbor: return "neighbor";
  }
  return "unknown";
}

ImputeStrategy impute_strategy_from_string(const std::string& name) {
  if (name == "mean") return ImputeStrategy::mean;
  if (name == "median") return ImputeStrategy::median;
  if (name == "neighbor") return ImputeStrategy::neighbor;
  throw UsageError("unknown imputation strategy '" + name + "'");
}

MissingMask generate_mask(const NodeLabels& labels, double gamma0, double gamma1,
                          std::int64_t d, std::uint64_t seed) {
  if (gamma0 < 0.0 || gamma0 > 1.0 || gamma1 < 0.0 || gamma1 > 1.0) {
    throw std::invalid_argument("generate_mask: gammas must lie in [0,1]");
  }
  MissingMask mask;
  const double gammas[2] = {gamma0, gamma1};
  double realized[2] = {0.0, 0.0};

  for (std::uint8_t category = 0; category <= 1; ++category) {
    const auto ids = labels.ids_of(category);
    const std::uint64_t space = static_cast<std::uint64_t>(ids.size()) * d;
    if (space == 0) continue;
    const std::uint64_t count = static_cast<std::uint64_t>(
        std::llround(gammas[category] * static_cast<double>(space)));
    realized[category] = static_cast<double>(count) / static_cast<double>(space);
    if (count == 0) continue;

    // Floyd's sampling: `count` distinct cell indices, uniform without
    // replacement, O(count) memory.
    RngStream stream(seed, "mask.cells", category);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(count * 2);
    for (std::uint64_t j = space - count; j < space; ++j) {
      const std::uint64_t t = stream.uniform_below(j + 1);
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    for (const std::uint64_t idx : chosen) {
      mask.cells.emplace_back(static_cast<std::uint32_t>(ids[idx / d]),
                              static_cast<std::uint32_t>(idx % d));
    }
  }
  std::sort(mask.cells.begin(), mask.cells.end());
  mask.gamma0 = realized[0];
  mask.gamma1 = realized[1];
  return mask;
}

namespace {

struct CategoryStats {
  // per category c and dimension j: count and statistic of observed values
  std::vector<std::int64_t> observed_count;  // 2 * d
  std::vector<double> value;                 // 2 * d (mean or median)
};

std::uint64_t cell_key(std::int64_t i, std::int64_t j, std::int64_t d) {
  return static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(d) +
         static_cast<std::uint64_t>(j);
}

[[noreturn]] void throw_degenerate(int category, std::int64_t dim) {
  throw DataError("imputation impossible: category " + std::to_string(category) +
                  " has every value masked in dimension " + std::to_string(dim));
}

CategoryStats category_means(const FeatureMatrix& features, const NodeLabels& labels,
                             const std::unordered_set<std::uint64_t>& masked) {
  const std::int64_t n = features.n;
  const std::int64_t d = features.d;
  CategoryStats stats;
  stats.observed_count.assign(2 * d, 0);
  stats.value.assign(2 * d, 0.0);
  for (std::int64_t i = 0; i < n; ++i) {
    const int c = labels.labels[i];
    const auto row = features.row(i);
    for (std::int64_t j = 0; j < d; ++j) {
      if (masked.contains(cell_key(i, j, d))) continue;
      stats.observed_count[c * d + j] += 1;
      stats.value[c * d + j] += row[j];
    }
  }
  for (std::size_t k = 0; k < stats.value.size(); ++k) {
    if (stats.observed_count[k] > 0) stats.value[k] /= stats.observed_count[k];
  }
  return stats;
}

CategoryStats category_medians(const FeatureMatrix& features, const NodeLabels& labels,
                               const std::unordered_set<std::uint64_t>& masked) {
  const std::int64_t n = features.n;
  const std::int64_t d = features.d;
  CategoryStats stats;
  stats.observed_count.assign(2 * d, 0);
  stats.value.assign(2 * d, 0.0);
  std::vector<double> column[2];
  for (std::int64_t j = 0; j < d; ++j) {
    column[0].clear();
    column[1].clear();
    for (std::int64_t i = 0; i < n; ++i) {
      if (masked.contains(cell_key(i, j, d))) continue;
      column[labels.labels[i]].push_back(features.at(i, j));
    }
    for (int c = 0; c <= 1; ++c) {
      auto& vals = column[c];
      stats.observed_count[c * d + j] = static_cast<std::int64_t>(vals.size());
      if (vals.empty()) continue;
      std::sort(vals.begin(), vals.end());
      const std::size_t m = vals.size();
      stats.value[c * d + j] =
          (m % 2 == 1) ? vals[m / 2] : 0.5 * (vals[m / 2 - 1] + vals[m / 2]);
    }
  }
  return stats;
}

}  // namespace

FeatureMatrix impute(const FeatureMatrix& features, const MissingMask& mask,
                     const NodeLabels& labels, const AttributedGraph& g,
                     ImputeStrategy strategy) {
  const std::int64_t n = features.n;
  const std::int64_t d = features.d;
  for (const auto& [node, dim] : mask.cells) {
    if (static_cast<std::int64_t>(node) >= n || static_cast<std::int64_t>(dim) >= d) {
      throw DataError("mask cell (" + std::to_string(node) + "," + std::to_string(dim) +
                      ") out of bounds");
    }
  }

  std::unordered_set<std::uint64_t> masked;
  masked.reserve(mask.cells.size() * 2);
  for (const auto& [node, dim] : mask.cells) masked.insert(cell_key(node, dim, d));

  // Statistics are computed from observed values only; masked cells never
  // feed them.
  CategoryStats stats;
  const bool need_means = strategy != ImputeStrategy::median;
  stats = need_means ? category_means(features, labels, masked)
                     : category_medians(features, labels, masked);

  if (strategy == ImputeStrategy::mean || strategy == ImputeStrategy::median) {
    for (const auto& [node, dim] : mask.cells) {
      const int c = labels.labels[node];
      if (stats.observed_count[c * d + dim] == 0) throw_degenerate(c, dim);
    }
  }

  FeatureMatrix out = features;
  for (const auto& [node, dim] : mask.cells) {
    const int c = labels.labels[node];
    double fill;
    if (strategy == ImputeStrategy::neighbor) {
      double acc = 0.0;
      std::int64_t count = 0;
      for (const std::int32_t v : g.neighbors(node)) {
        if (labels.labels[v] != c) continue;
        if (masked.contains(cell_key(v, dim, d))) continue;
        acc += features.at(v, dim);
        ++count;
      }
      if (count > 0) {
        fill = acc / static_cast<double>(count);
      } else {
        if (stats.observed_count[c * d + dim] == 0) throw_degenerate(c, dim);
        fill = stats.value[c * d + dim];
      }
    } else {
      fill = stats.value[c * d + dim];
    }
    out.at(node, dim) = static_cast<float>(fill);
  }
  return out;
}

}  // namespace gadforge
