#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "gadforge/graph.hpp"
#include "gadforge/manifest.hpp"
#include "gadforge/stats.hpp"

namespace gadforge {

// Degree strata: core = top decile of the original degree sequence, middle
// between the median and the 90th percentile, edge below the median.
enum class Stratum : int { core = 0, middle = 1, edge = 2 };

struct ExpansionPlan {
  std::int64_t target_n = 0;
  std::int64_t new_nodes = 0;
  std::int64_t new_anomalies = 0;
  std::int64_t new_normals = 0;
  std::int64_t target_edges = 0;  // round(target_n * original edge/node ratio)
  double degree_p50 = 0.0;
  double degree_p90 = 0.0;
  // Probability of an edge joining strata (a,b); symmetric, sums to 1 over
  // all ordered pairs, measured from the original edge set.
  std::array<std::array<double, 3>, 3> stratum_fractions{};

  Stratum stratum_of(double degree) const {
    if (degree >= degree_p90) return Stratum::core;
    if (degree >= degree_p50) return Stratum::middle;
    return Stratum::edge;
  }
};

// Computes counts so the expanded anomaly ratio matches the original within
// one node and the edge/node ratio is preserved exactly by construction.
ExpansionPlan plan_expansion(const AttributedGraph& g, const NodeLabels& labels,
                             std::int64_t target_n);

struct SynthesizedNodes {
  FeatureMatrix features;            // new_nodes x d, clamped to [0,1]
  std::vector<std::uint8_t> labels;  // new_normals zeros then new_anomalies ones
};

SynthesizedNodes synthesize_attributes(const ExpansionPlan& plan, const GmmModel& normal_model,
                                       const GmmModel& anomaly_model, std::uint64_t seed);

// Grows the topology: original rows are retained verbatim, each new node gets
// a target degree drawn from the original empirical degree distribution, and
// new edges are realized by degree-proportional stub sampling constrained to
// the measured inter-stratum fractions. Throws ConstructionError when the
// proposal budget (10x the needed edges) runs out farther than 1% from the
// target edge count. The returned graph carries no features.
AttributedGraph construct_edges(const ExpansionPlan& plan, const AttributedGraph& g,
                                const NodeLabels& labels,
                                const std::vector<std::uint8_t>& new_labels,
                                std::uint64_t seed);

struct ExpansionValidation {
  bool ratio_ok = false;
  double ratio_gap = 0.0;  // |expanded ratio - original ratio|
  KsResult degree_ks;
  KsMatrixReport normal_attrs;   // expanded X0 vs original X0
  KsMatrixReport anomaly_attrs;  // expanded X1 vs original X1
  bool passed = false;           // all four checks

  nlohmann::json to_json() const;
};

// Failures are reported in the record, never thrown.
ExpansionValidation validate_expansion(const AttributedGraph& original,
                                       const AttributedGraph& expanded,
                                       const NodeLabels& original_labels,
                                       const NodeLabels& expanded_labels);

struct ExpandOptions {
  std::vector<int> gmm_k_candidates{1, 2, 3, 4, 5};
};

struct ExpandedVariant {
  AttributedGraph graph;
  NodeLabels labels;
  VariantManifest manifest;
  ExpansionValidation validation;
};

// Full pipeline: plan, fit per-class GMMs, synthesize attributes, construct
// edges, validate, and assemble the manifest.
ExpandedVariant expand_graph(const AttributedGraph& g, const NodeLabels& labels,
                             std::int64_t target_n, std::uint64_t seed,
                             const ExpandOptions& options = {});

}  // namespace gadforge
