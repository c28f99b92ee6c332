#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "gadforge/graph.hpp"
#include "gadforge/rng.hpp"

namespace gadforge::detail {

inline double sq_distance(std::span<const float> row, const double* center, std::int64_t d) {
  double acc = 0.0;
  for (std::int64_t j = 0; j < d; ++j) {
    const double diff = static_cast<double>(row[j]) - center[j];
    acc += diff * diff;
  }
  return acc;
}

// k-means++ seeding: first center uniform, each next one drawn with
// probability proportional to the squared distance to the nearest chosen
// center. Returns k centers as a k x d row-major array.
inline std::vector<double> kmeanspp_centers(const FeatureMatrix& x, std::int64_t k,
                                            RngStream& stream) {
  const std::int64_t m = x.n;
  const std::int64_t d = x.d;
  std::vector<double> centers(k * d);
  std::vector<double> dist2(m, std::numeric_limits<double>::infinity());

  std::int64_t first = static_cast<std::int64_t>(stream.uniform_below(m));
  for (std::int64_t j = 0; j < d; ++j) centers[j] = x.at(first, j);

  for (std::int64_t c = 1; c < k; ++c) {
    const double* prev = centers.data() + (c - 1) * d;
    double total = 0.0;
    for (std::int64_t i = 0; i < m; ++i) {
      dist2[i] = std::min(dist2[i], sq_distance(x.row(i), prev, d));
      total += dist2[i];
    }
    std::int64_t pick = 0;
    if (total > 0.0) {
      double target = stream.uniform01() * total;
      for (std::int64_t i = 0; i < m; ++i) {
        target -= dist2[i];
        if (target <= 0.0) {
          pick = i;
          break;
        }
        pick = i;  // numerical tail: fall back to the last point
      }
    } else {
      pick = static_cast<std::int64_t>(stream.uniform_below(m));
    }
    for (std::int64_t j = 0; j < d; ++j) centers[c * d + j] = x.at(pick, j);
  }
  return centers;
}

}  // namespace gadforge::detail
