#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "gadforge/graph.hpp"
#include "gadforge/rng.hpp"

namespace gadforge {

struct KsResult {
  double statistic = 0.0;  // sup ECDF gap D in [0,1]
  double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov test. D is the exact supremum of the ECDF
// gap over the merged sample points; the p-value uses the asymptotic
// Kolmogorov distribution with effective size ne = |a||b| / (|a|+|b|).
// Throws std::invalid_argument on an empty sample.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// Survival function of the asymptotic Kolmogorov distribution, Q(x) = P(K > x).
double kolmogorov_sf(double x);

// Per-dimension KS over the columns of two matrices with equal d.
// Pass rule: median p-value > 0.05; pass_fraction is reported for diagnostics.
struct KsMatrixReport {
  std::vector<KsResult> per_dimension;
  double median_p = 1.0;
  double pass_fraction = 1.0;  // share of dimensions with p > 0.05
  bool passed = true;          // median_p > 0.05

  nlohmann::json to_json() const;
};

KsMatrixReport ks_matrix(const FeatureMatrix& a, const FeatureMatrix& b);

// Mixture of diagonal-covariance Gaussians.
struct GmmModel {
  std::int64_t k = 0;
  std::int64_t d = 0;
  std::vector<double> weights;    // k, sums to 1
  std::vector<double> means;      // k x d, row-major
  std::vector<double> variances;  // k x d, each >= variance floor

  double log_likelihood = 0.0;  // of the training data under this model
  double bic = 0.0;
  int iterations = 0;

  double mean_at(std::int64_t comp, std::int64_t j) const { return means[comp * d + j]; }
  double var_at(std::int64_t comp, std::int64_t j) const { return variances[comp * d + j]; }
};

inline constexpr double kGmmVarianceFloor = 1e-6;

// EM fit with k-means++ initialization. Runs one fit per candidate component
// count (candidates larger than the sample are skipped) and returns the
// BIC-minimizing model. Convergence: relative log-likelihood improvement
// below 1e-6, or 200 iterations.
GmmModel fit_gmm(const FeatureMatrix& x, const std::vector<int>& k_candidates,
                 std::uint64_t seed);

// Draws m rows: component per the weights, then an independent Gaussian per
// dimension. Deterministic given the stream.
FeatureMatrix sample_gmm(const GmmModel& model, std::int64_t m, RngStream& stream);

struct ClusterAssignment {
  std::vector<std::int32_t> assignment;  // m, values in [0,k)
  std::int64_t k = 0;
  std::int64_t d = 0;
  std::vector<double> centroids;     // k x d
  std::vector<std::int64_t> sizes;   // k
  double inertia = 0.0;
  int iterations = 0;
};

// Lloyd's algorithm with k-means++ seeding, at most 100 iterations, stopping
// when assignments stabilize. Empty clusters are re-seeded from the point
// farthest from its current centroid.
ClusterAssignment kmeans(const FeatureMatrix& x, std::int64_t k, std::uint64_t seed);

std::vector<double> to_doubles(std::span<const std::int64_t> values);
std::vector<double> column_of(const FeatureMatrix& m, std::int64_t j);

}  // namespace gadforge
