#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gadforge/graph.hpp"

namespace gadforge {

// Sparse set of masked (node, dimension) cells, sorted lexicographically.
// gamma0/gamma1 are the realized per-category missing ratios, exact by
// construction: round(gamma_c * |V_c| * d) cells per category.
struct MissingMask {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cells;
  double gamma0 = 0.0;
  double gamma1 = 0.0;

  bool contains(std::uint32_t node, std::uint32_t dim) const;
  std::size_t size() const { return cells.size(); }
};

// Exact-count cell sampling: for each category, exactly
// round(gamma_c * |V_c| * d) distinct cells chosen uniformly without
// replacement. Deterministic given the seed.
MissingMask generate_mask(const NodeLabels& labels, double gamma0, double gamma1,
                          std::int64_t d, std::uint64_t seed);

enum class ImputeStrategy { mean, median, neighbor };

const char* to_string(ImputeStrategy strategy);
ImputeStrategy impute_strategy_from_string(const std::string& name);

// Fills masked cells from observed values of the same category:
//   mean/median - per-dimension category statistic over unmasked cells;
//   neighbor    - mean over same-category neighbors whose own cell is
//                 observed, falling back to the category mean.
// Unmasked cells are returned bit-identical. Throws DataError when a
// category has every value masked in some dimension.
FeatureMatrix impute(const FeatureMatrix& features, const MissingMask& mask,
                     const NodeLabels& labels, const AttributedGraph& g,
                     ImputeStrategy strategy);

}  // namespace gadforge
