#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gadforge/stats.hpp"
#include "kmeanspp.hpp"

namespace gadforge {

namespace {
constexpr int kMaxLloydIterations = 100;
}

ClusterAssignment kmeans(const FeatureMatrix& x, std::int64_t k, std::uint64_t seed) {
  const std::int64_t m = x.n;
  const std::int64_t d = x.d;
  if (k < 1 || m < k) {
    throw std::invalid_argument("kmeans: need 1 <= k <= sample size, got k=" +
                                std::to_string(k) + ", m=" + std::to_string(m));
  }

  RngStream stream(seed, "kmeans.init");
  ClusterAssignment result;
  result.k = k;
  result.d = d;
  result.centroids = detail::kmeanspp_centers(x, k, stream);
  result.assignment.assign(m, 0);
  result.sizes.assign(k, 0);

  std::vector<double> next_centroids(k * d);
  std::vector<std::int64_t> next_sizes(k);

  for (int iter = 1; iter <= kMaxLloydIterations; ++iter) {
    bool changed = false;
    double inertia = 0.0;
    std::fill(next_centroids.begin(), next_centroids.end(), 0.0);
    std::fill(next_sizes.begin(), next_sizes.end(), 0);

    for (std::int64_t i = 0; i < m; ++i) {
      const auto row = x.row(i);
      double best = std::numeric_limits<double>::infinity();
      std::int32_t best_c = 0;
      for (std::int64_t c = 0; c < k; ++c) {
        const double dist = detail::sq_distance(row, result.centroids.data() + c * d, d);
        if (dist < best) {
          best = dist;
          best_c = static_cast<std::int32_t>(c);
        }
      }
      if (result.assignment[i] != best_c) changed = true;
      result.assignment[i] = best_c;
      inertia += best;
      next_sizes[best_c] += 1;
      double* acc = next_centroids.data() + best_c * d;
      for (std::int64_t j = 0; j < d; ++j) acc[j] += row[j];
    }

    result.inertia = inertia;
    result.iterations = iter;
    if (!changed && iter > 1) break;

    // Re-seed empty clusters from the point farthest from its own centroid;
    // that point becomes the new singleton center.
    for (std::int64_t c = 0; c < k; ++c) {
      if (next_sizes[c] > 0) continue;
      double worst = -1.0;
      std::int64_t worst_i = 0;
      for (std::int64_t i = 0; i < m; ++i) {
        const double dist = detail::sq_distance(
            x.row(i), result.centroids.data() + result.assignment[i] * d, d);
        if (dist > worst) {
          worst = dist;
          worst_i = i;
        }
      }
      const std::int32_t old_c = result.assignment[worst_i];
      next_sizes[old_c] -= 1;
      double* old_acc = next_centroids.data() + old_c * d;
      const auto row = x.row(worst_i);
      for (std::int64_t j = 0; j < d; ++j) old_acc[j] -= row[j];
      result.assignment[worst_i] = static_cast<std::int32_t>(c);
      next_sizes[c] = 1;
      double* acc = next_centroids.data() + c * d;
      for (std::int64_t j = 0; j < d; ++j) acc[j] = row[j];
      changed = true;
    }

    for (std::int64_t c = 0; c < k; ++c) {
      if (next_sizes[c] == 0) continue;
      double* centroid = result.centroids.data() + c * d;
      const double* acc = next_centroids.data() + c * d;
      for (std::int64_t j = 0; j < d; ++j) {
        centroid[j] = acc[j] / static_cast<double>(next_sizes[c]);
      }
    }
    result.sizes = next_sizes;
  }

  // Final pass so sizes/centroids are consistent with the last assignment.
  std::fill(result.sizes.begin(), result.sizes.end(), 0);
  std::fill(next_centroids.begin(), next_centroids.end(), 0.0);
  double inertia = 0.0;
  for (std::int64_t i = 0; i < m; ++i) {
    const std::int32_t c = result.assignment[i];
    result.sizes[c] += 1;
    const auto row = x.row(i);
    double* acc = next_centroids.data() + c * d;
    for (std::int64_t j = 0; j < d; ++j) acc[j] += row[j];
  }
  for (std::int64_t c = 0; c < k; ++c) {
    if (result.sizes[c] == 0) continue;
    double* centroid = result.centroids.data() + c * d;
    for (std::int64_t j = 0; j < d; ++j) {
      centroid[j] = next_centroids[c * d + j] / static_cast<double>(result.sizes[c]);
    }
  }
  for (std::int64_t i = 0; i < m; ++i) {
    inertia += detail::sq_distance(x.row(i),
                                   result.centroids.data() + result.assignment[i] * d, d);
  }
  result.inertia = inertia;
  return result;
}

}  // namespace gadforge
