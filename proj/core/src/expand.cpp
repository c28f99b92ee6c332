#include "gadforge/expand.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "gadforge/errors.hpp"
#include "gadforge/rng.hpp"

namespace gadforge {

namespace {

double percentile(const std::vector<std::int64_t>& sorted, double p) {
  const std::size_t idx = static_cast<std::size_t>(
      std::llround(p * static_cast<double>(sorted.size() - 1)));
  return static_cast<double>(sorted[idx]);
}

int stratum_index(const ExpansionPlan& plan, double degree) {
  return static_cast<int>(plan.stratum_of(degree));
}

}  // namespace

ExpansionPlan plan_expansion(const AttributedGraph& g, const NodeLabels& labels,
                             std::int64_t target_n) {
  if (target_n < g.n) {
    throw std::invalid_argument("plan_expansion: target_n " + std::to_string(target_n) +
                                " below current n " + std::to_string(g.n));
  }
  ExpansionPlan plan;
  plan.target_n = target_n;
  plan.new_nodes = target_n - g.n;

  const double ratio = labels.anomaly_ratio();
  const std::int64_t total_anomalies =
      std::llround(static_cast<double>(target_n) * ratio);
  plan.new_anomalies = total_anomalies - labels.anomaly_count;
  plan.new_normals = plan.new_nodes - plan.new_anomalies;
  plan.target_edges = std::llround(static_cast<double>(target_n) *
                                   static_cast<double>(g.edge_count()) /
                                   static_cast<double>(g.n));

  auto degrees = degree_sequence(g);
  std::vector<std::int64_t> sorted(degrees);
  std::sort(sorted.begin(), sorted.end());
  plan.degree_p50 = percentile(sorted, 0.50);
  plan.degree_p90 = percentile(sorted, 0.90);

  // Measure edge mixing across strata on the original graph.
  std::vector<int> strata(g.n);
  for (std::int64_t i = 0; i < g.n; ++i) {
    strata[i] = stratum_index(plan, static_cast<double>(degrees[i]));
  }
  double total = 0.0;
  for (std::int64_t u = 0; u < g.n; ++u) {
    for (const std::int32_t v : g.neighbors(u)) {
      if (u < v) {
        plan.stratum_fractions[strata[u]][strata[v]] += 1.0;
        plan.stratum_fractions[strata[v]][strata[u]] += 1.0;
        total += 2.0;
      }
    }
  }
  if (total > 0.0) {
    for (auto& row : plan.stratum_fractions) {
      for (double& f : row) f /= total;
    }
  }
  return plan;
}

SynthesizedNodes synthesize_attributes(const ExpansionPlan& plan, const GmmModel& normal_model,
                                       const GmmModel& anomaly_model, std::uint64_t seed) {
  SynthesizedNodes out;
  const std::int64_t d = normal_model.d;
  out.features = FeatureMatrix(plan.new_nodes, d);
  out.labels.assign(plan.new_nodes, 0);
  if (plan.new_nodes == 0) return out;

  RngStream normal_stream(seed, "expand.attr", 0);
  RngStream anomaly_stream(seed, "expand.attr", 1);
  FeatureMatrix normals = sample_gmm(normal_model, plan.new_normals, normal_stream);
  FeatureMatrix anomalies = sample_gmm(anomaly_model, plan.new_anomalies, anomaly_stream);

  // Clamp to [0,1]: synthesized rows must respect the normalized range.
  auto clamp_into = [&](const FeatureMatrix& src, std::int64_t dst_offset) {
    for (std::int64_t i = 0; i < src.n; ++i) {
      const auto row = src.row(i);
      auto dst = out.features.row(dst_offset + i);
      for (std::int64_t j = 0; j < d; ++j) {
        dst[j] = std::clamp(row[j], 0.0f, 1.0f);
      }
    }
  };
  clamp_into(normals, 0);
  clamp_into(anomalies, plan.new_normals);
  std::fill(out.labels.begin() + plan.new_normals, out.labels.end(), 1);
  return out;
}

AttributedGraph construct_edges(const ExpansionPlan& plan, const AttributedGraph& g,
                                const NodeLabels& labels,
                                const std::vector<std::uint8_t>& new_labels,
                                std::uint64_t seed) {
  (void)labels;  // edge realization is label-agnostic
  if (static_cast<std::int64_t>(new_labels.size()) != plan.new_nodes) {
    throw std::invalid_argument("construct_edges: plan and labels disagree on new node count");
  }
  const std::int64_t n = g.n;
  const std::int64_t target_n = plan.target_n;
  const std::int64_t needed = plan.target_edges - g.edge_count();

  // Target degrees: a balanced bootstrap of the original degree multiset
  // (whole copies plus a without-replacement remainder), so the stub budget
  // matches the edge target and the new degree distribution mirrors the
  // original. Originals keep their degrees untouched: every new edge joins
  // two new nodes.
  const auto degrees = degree_sequence(g);
  std::vector<std::int64_t> targets;
  targets.reserve(plan.new_nodes);
  const std::int64_t copies = n > 0 ? plan.new_nodes / n : 0;
  for (std::int64_t c = 0; c < copies; ++c) {
    targets.insert(targets.end(), degrees.begin(), degrees.end());
  }
  const std::int64_t remainder = plan.new_nodes - copies * n;
  RngStream deg_stream(seed, "expand.tdeg");
  if (remainder > 0) {
    std::vector<std::int64_t> pool(degrees);
    for (std::int64_t r = 0; r < remainder; ++r) {
      const std::int64_t pick =
          static_cast<std::int64_t>(deg_stream.uniform_below(pool.size() - r));
      targets.push_back(pool[pick]);
      std::swap(pool[pick], pool[pool.size() - 1 - r]);
    }
  }
  deg_stream.shuffle(targets);

  // Stub pools per stratum; sampling a stub uniformly is degree-proportional
  // endpoint sampling with remaining-capacity weights.
  std::array<std::vector<std::int32_t>, 3> pools;
  for (std::int64_t u = 0; u < plan.new_nodes; ++u) {
    const int s = stratum_index(plan, static_cast<double>(targets[u]));
    for (std::int64_t t = 0; t < targets[u]; ++t) {
      pools[s].push_back(static_cast<std::int32_t>(u));
    }
  }

  double pair_cumulative[9];
  double acc = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      acc += plan.stratum_fractions[a][b];
      pair_cumulative[a * 3 + b] = acc;
    }
  }

  RngStream pair_stream(seed, "expand.pairs");
  auto pick_nonempty = [&](int preferred) {
    if (!pools[preferred].empty()) return preferred;
    int best = -1;
    std::size_t best_size = 0;
    for (int s = 0; s < 3; ++s) {
      if (pools[s].size() > best_size) {
        best = s;
        best_size = pools[s].size();
      }
    }
    return best;
  };

  std::unordered_set<std::uint64_t> new_edge_keys;
  new_edge_keys.reserve(static_cast<std::size_t>(needed) * 2);
  std::vector<std::pair<std::int32_t, std::int32_t>> new_edges;
  new_edges.reserve(needed);

  const std::int64_t proposal_budget = 10 * std::max<std::int64_t>(needed, 1);
  std::int64_t proposals = 0;
  while (static_cast<std::int64_t>(new_edges.size()) < needed &&
         proposals < proposal_budget) {
    ++proposals;
    const std::size_t total_stubs = pools[0].size() + pools[1].size() + pools[2].size();
    if (total_stubs < 2) break;

    const double u01 = pair_stream.uniform01() * acc;
    int pair = 8;
    for (int p = 0; p < 9; ++p) {
      if (u01 <= pair_cumulative[p]) {
        pair = p;
        break;
      }
    }
    int sa = pick_nonempty(pair / 3);
    if (sa < 0) break;
    const std::size_t ia = pair_stream.uniform_below(pools[sa].size());
    const std::int32_t u = pools[sa][ia];
    std::swap(pools[sa][ia], pools[sa].back());
    pools[sa].pop_back();

    int sb = pick_nonempty(pair % 3);
    if (sb < 0) {
      pools[sa].push_back(u);
      break;
    }
    const std::size_t ib = pair_stream.uniform_below(pools[sb].size());
    const std::int32_t v = pools[sb][ib];
    std::swap(pools[sb][ib], pools[sb].back());
    pools[sb].pop_back();

    const std::int32_t lo = std::min(u, v);
    const std::int32_t hi = std::max(u, v);
    const std::uint64_t key =
        static_cast<std::uint64_t>(lo) * static_cast<std::uint64_t>(target_n) + hi;
    if (u == v || new_edge_keys.contains(key)) {
      pools[sa].push_back(u);
      pools[sb].push_back(v);
      continue;
    }
    new_edge_keys.insert(key);
    new_edges.emplace_back(lo, hi);
  }

  const std::int64_t achieved = g.edge_count() + static_cast<std::int64_t>(new_edges.size());
  if (std::abs(achieved - plan.target_edges) >
      static_cast<std::int64_t>(0.01 * static_cast<double>(plan.target_edges))) {
    throw ConstructionError("edge construction stalled at " + std::to_string(achieved) +
                                " of " + std::to_string(plan.target_edges) + " edges",
                            achieved);
  }

  // Assemble: original CSR rows verbatim, then new-node adjacency.
  std::vector<std::vector<std::int32_t>> new_adj(plan.new_nodes);
  for (const auto& [lu, lv] : new_edges) {
    new_adj[lu].push_back(static_cast<std::int32_t>(n + lv));
    new_adj[lv].push_back(static_cast<std::int32_t>(n + lu));
  }

  AttributedGraph out;
  out.n = target_n;
  out.d = g.d;
  out.row_offsets.assign(target_n + 1, 0);
  out.col_indices.reserve(g.col_indices.size() + 2 * new_edges.size());
  out.col_indices = g.col_indices;
  for (std::int64_t i = 0; i < n; ++i) out.row_offsets[i + 1] = g.row_offsets[i + 1];
  for (std::int64_t u = 0; u < plan.new_nodes; ++u) {
    auto& adj = new_adj[u];
    std::sort(adj.begin(), adj.end());
    out.col_indices.insert(out.col_indices.end(), adj.begin(), adj.end());
    out.row_offsets[n + u + 1] = static_cast<std::int64_t>(out.col_indices.size());
  }
  return out;
}

ExpansionValidation validate_expansion(const AttributedGraph& original,
                                       const AttributedGraph& expanded,
                                       const NodeLabels& original_labels,
                                       const NodeLabels& expanded_labels) {
  ExpansionValidation v;
  v.ratio_gap =
      std::abs(expanded_labels.anomaly_ratio() - original_labels.anomaly_ratio());
  v.ratio_ok = v.ratio_gap <= 1.0 / static_cast<double>(expanded.n) + 1e-12;

  const auto deg_orig = to_doubles(degree_sequence(original));
  const auto deg_exp = to_doubles(degree_sequence(expanded));
  v.degree_ks = ks_two_sample(deg_exp, deg_orig);

  const auto orig_normals = gather_rows(original.features, original_labels.ids_of(0));
  const auto orig_anomalies = gather_rows(original.features, original_labels.ids_of(1));
  const auto exp_normals = gather_rows(expanded.features, expanded_labels.ids_of(0));
  const auto exp_anomalies = gather_rows(expanded.features, expanded_labels.ids_of(1));
  v.normal_attrs = ks_matrix(exp_normals, orig_normals);
  v.anomaly_attrs = ks_matrix(exp_anomalies, orig_anomalies);

  v.passed = v.ratio_ok && v.degree_ks.p_value > 0.05 && v.normal_attrs.passed &&
             v.anomaly_attrs.passed;
  return v;
}

nlohmann::json ExpansionValidation::to_json() const {
  nlohmann::json j;
  j["ratio_ok"] = ratio_ok;
  j["ratio_gap"] = ratio_gap;
  j["degree_ks"] = {{"statistic", degree_ks.statistic}, {"p_value", degree_ks.p_value}};
  j["normal_attrs"] = normal_attrs.to_json();
  j["anomaly_attrs"] = anomaly_attrs.to_json();
  j["passed"] = passed;
  return j;
}

ExpandedVariant expand_graph(const AttributedGraph& g, const NodeLabels& labels,
                             std::int64_t target_n, std::uint64_t seed,
                             const ExpandOptions& options) {
  const ExpansionPlan plan = plan_expansion(g, labels, target_n);

  const auto x0 = gather_rows(g.features, labels.ids_of(0));
  const auto x1 = gather_rows(g.features, labels.ids_of(1));
  const std::uint64_t seed0 = RngStream::mix64(seed ^ RngStream::hash_tag("expand.gmm0"));
  const std::uint64_t seed1 = RngStream::mix64(seed ^ RngStream::hash_tag("expand.gmm1"));
  const GmmModel gmm_normal = fit_gmm(x0, options.gmm_k_candidates, seed0);
  const GmmModel gmm_anomaly = fit_gmm(x1, options.gmm_k_candidates, seed1);

  const SynthesizedNodes synth =
      synthesize_attributes(plan, gmm_normal, gmm_anomaly, seed);
  AttributedGraph expanded = construct_edges(plan, g, labels, synth.labels, seed);

  expanded.features = FeatureMatrix(plan.target_n, g.d);
  std::copy(g.features.values.begin(), g.features.values.end(),
            expanded.features.values.begin());
  std::copy(synth.features.values.begin(), synth.features.values.end(),
            expanded.features.values.begin() + g.features.values.size());
  expanded.validate();

  std::vector<std::uint8_t> all_labels(labels.labels);
  all_labels.insert(all_labels.end(), synth.labels.begin(), synth.labels.end());

  ExpandedVariant out;
  out.graph = std::move(expanded);
  out.labels = NodeLabels(std::move(all_labels));
  out.validation = validate_expansion(g, out.graph, labels, out.labels);

  VariantManifest manifest;
  manifest.transform = "expand";
  manifest.seed = seed;
  manifest.parameters = {
      {"target_n", plan.target_n},
      {"new_nodes", plan.new_nodes},
      {"new_anomalies", plan.new_anomalies},
      {"target_edges", plan.target_edges},
      {"degree_p50", plan.degree_p50},
      {"degree_p90", plan.degree_p90},
      {"gmm_k_candidates", options.gmm_k_candidates},
      {"gmm_normal_k", gmm_normal.k},
      {"gmm_anomaly_k", gmm_anomaly.k},
  };
  manifest.extra = {{"validation", out.validation.to_json()},
                    {"achieved_edges", out.graph.edge_count()}};
  out.manifest = std::move(manifest);
  return out;
}

}  // namespace gadforge
