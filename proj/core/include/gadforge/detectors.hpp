#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gadforge/graph.hpp"

namespace gadforge {

// Anomaly scores: larger means more anomalous; only the ordering carries
// meaning across detectors.
struct ScoreVector {
  std::vector<double> scores;
  std::string detector_id;
};

struct MlpaeConfig {
  std::vector<int> hidden_dims{64, 32};  // encoder widths; decoder mirrors them
  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  int max_epochs = 100;
  int batch_size = 1024;
  int patience = 10;  // epochs without validation improvement
  std::uint64_t seed = 20;
};

// MLP autoencoder trained to reconstruct node attributes; the anomaly score
// of a row is its mean squared reconstruction error. Hidden layers are
// rectified, the output layer is linear. Training runs in 64-bit arithmetic
// regardless of the 32-bit feature storage.
class MlpaeModel {
 public:
  // Deterministically initialized, untrained model (exposed for gradient
  // checks and tests).
  static MlpaeModel create(std::int64_t d, const MlpaeConfig& config);

  // Adam on mean-squared reconstruction error over the training rows,
  // early-stopped on validation loss. Label-free. Deterministic given the
  // seed; train/val must be disjoint.
  static MlpaeModel train(const FeatureMatrix& features,
                          std::span<const std::int64_t> train_ids,
                          std::span<const std::int64_t> val_ids, const MlpaeConfig& config);

  ScoreVector score(const FeatureMatrix& features) const;

  double loss(const FeatureMatrix& features, std::span<const std::int64_t> ids) const;
  // Full-batch loss and analytic gradient at the current parameters.
  double loss_and_gradient(const FeatureMatrix& features,
                           std::span<const std::int64_t> ids,
                           std::vector<double>& gradient) const;

  const std::vector<std::int64_t>& layer_dims() const { return dims_; }
  const std::vector<double>& parameters() const { return params_; }
  std::vector<double>& parameters() { return params_; }

  // Checkpoint: magic "GADW", u32 layer count, u32 dims, then 64-bit
  // parameters in layer order (weights then bias per layer).
  void save(const std::filesystem::path& path) const;
  static MlpaeModel load(const std::filesystem::path& path);

  std::vector<double> epoch_train_loss;
  std::vector<double> epoch_val_loss;

 private:
  std::vector<std::int64_t> dims_;  // d, hidden..., bottleneck, ..., hidden, d
  std::vector<double> params_;
};

// Mean Euclidean distance to the k nearest training rows (self excluded for
// training rows). Reference scorer exercising the attribute space only.
ScoreVector score_knn(const FeatureMatrix& features,
                      std::span<const std::int64_t> train_ids, int k = 10);

// Robust z-score of log(1+degree): |x - median| / MAD, all zeros when the
// MAD vanishes. Topology-only reference scorer.
ScoreVector score_degree(const AttributedGraph& g);

}  // namespace gadforge
