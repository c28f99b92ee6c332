#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gadforge/stats.hpp"
#include "kmeanspp.hpp"

namespace gadforge {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;  // log(2*pi)
constexpr int kMaxEmIterations = 200;
constexpr double kRelativeLlTolerance = 1e-6;

struct EmScratch {
  std::vector<double> log_norm;   // k: -0.5 * sum_j log(2*pi*var_kj)
  std::vector<double> log_w;      // k
  std::vector<double> comp_logp;  // k
  std::vector<double> resp_sum;   // k
  std::vector<double> mean_acc;   // k*d
  std::vector<double> sq_acc;     // k*d
};

// One EM fit at fixed component count. Log-domain E-step; the M-step floors
// variances. The log-likelihood is checked to be non-decreasing on every
// iteration (up to rounding), which EM guarantees.
GmmModel fit_fixed_k(const FeatureMatrix& x, std::int64_t k, RngStream& stream) {
  const std::int64_t m = x.n;
  const std::int64_t d = x.d;

  GmmModel model;
  model.k = k;
  model.d = d;
  model.weights.assign(k, 1.0 / static_cast<double>(k));
  model.means = detail::kmeanspp_centers(x, k, stream);
  model.variances.assign(k * d, 0.0);

  // Initial variances: global per-dimension variance, floored.
  std::vector<double> col_mean(d, 0.0), col_sq(d, 0.0);
  for (std::int64_t i = 0; i < m; ++i) {
    const auto row = x.row(i);
    for (std::int64_t j = 0; j < d; ++j) {
      col_mean[j] += row[j];
      col_sq[j] += static_cast<double>(row[j]) * row[j];
    }
  }
  for (std::int64_t j = 0; j < d; ++j) {
    col_mean[j] /= static_cast<double>(m);
    const double var = std::max(col_sq[j] / m - col_mean[j] * col_mean[j], kGmmVarianceFloor);
    for (std::int64_t c = 0; c < k; ++c) model.variances[c * d + j] = var;
  }

  EmScratch s;
  s.log_norm.resize(k);
  s.log_w.resize(k);
  s.comp_logp.resize(k);
  s.resp_sum.resize(k);
  s.mean_acc.resize(k * d);
  s.sq_acc.resize(k * d);

  double prev_ll = -std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= kMaxEmIterations; ++iter) {
    for (std::int64_t c = 0; c < k; ++c) {
      double acc = 0.0;
      for (std::int64_t j = 0; j < d; ++j) acc += std::log(model.variances[c * d + j]);
      s.log_norm[c] = -0.5 * (static_cast<double>(d) * kLogTwoPi + acc);
      s.log_w[c] = std::log(model.weights[c]);
    }
    std::fill(s.resp_sum.begin(), s.resp_sum.end(), 0.0);
    std::fill(s.mean_acc.begin(), s.mean_acc.end(), 0.0);
    std::fill(s.sq_acc.begin(), s.sq_acc.end(), 0.0);

    double ll = 0.0;
    for (std::int64_t i = 0; i < m; ++i) {
      const auto row = x.row(i);
      double max_logp = -std::numeric_limits<double>::infinity();
      for (std::int64_t c = 0; c < k; ++c) {
        double quad = 0.0;
        const double* mu = model.means.data() + c * d;
        const double* var = model.variances.data() + c * d;
        for (std::int64_t j = 0; j < d; ++j) {
          const double diff = static_cast<double>(row[j]) - mu[j];
          quad += diff * diff / var[j];
        }
        s.comp_logp[c] = s.log_w[c] + s.log_norm[c] - 0.5 * quad;
        max_logp = std::max(max_logp, s.comp_logp[c]);
      }
      double sum_exp = 0.0;
      for (std::int64_t c = 0; c < k; ++c) sum_exp += std::exp(s.comp_logp[c] - max_logp);
      const double row_ll = max_logp + std::log(sum_exp);
      ll += row_ll;
      for (std::int64_t c = 0; c < k; ++c) {
        const double resp = std::exp(s.comp_logp[c] - row_ll);
        s.resp_sum[c] += resp;
        double* macc = s.mean_acc.data() + c * d;
        double* qacc = s.sq_acc.data() + c * d;
        for (std::int64_t j = 0; j < d; ++j) {
          macc[j] += resp * row[j];
          qacc[j] += resp * static_cast<double>(row[j]) * row[j];
        }
      }
    }

    if (iter > 1) {
      const double tol = 1e-9 * std::max(1.0, std::abs(prev_ll));
      if (ll + tol < prev_ll) {
        throw std::logic_error("EM log-likelihood decreased: " + std::to_string(prev_ll) +
                               " -> " + std::to_string(ll));
      }
    }
    model.log_likelihood = ll;
    model.iterations = iter;
    if (iter > 1 &&
        std::abs(ll - prev_ll) < kRelativeLlTolerance * std::max(1.0, std::abs(prev_ll))) {
      break;
    }
    prev_ll = ll;

    for (std::int64_t c = 0; c < k; ++c) {
      const double nk = std::max(s.resp_sum[c], 1e-300);
      model.weights[c] = s.resp_sum[c] / static_cast<double>(m);
      for (std::int64_t j = 0; j < d; ++j) {
        const double mu = s.mean_acc[c * d + j] / nk;
        model.means[c * d + j] = mu;
        model.variances[c * d + j] =
            std::max(s.sq_acc[c * d + j] / nk - mu * mu, kGmmVarianceFloor);
      }
    }
    // Guard against fully starved components.
    double wsum = 0.0;
    for (double& w : model.weights) {
      w = std::max(w, 1e-12);
      wsum += w;
    }
    for (double& w : model.weights) w /= wsum;
  }

  const double n_params = static_cast<double>(k - 1 + 2 * k * d);
  model.bic = -2.0 * model.log_likelihood + n_params * std::log(static_cast<double>(m));
  return model;
}

}  // namespace

GmmModel fit_gmm(const FeatureMatrix& x, const std::vector<int>& k_candidates,
                 std::uint64_t seed) {
  if (x.n < 1 || x.d < 1) {
    throw std::invalid_argument("fit_gmm: empty sample");
  }
  for (const float v : x.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("fit_gmm: non-finite value");
  }
  std::vector<int> usable;
  for (const int k : k_candidates) {
    if (k >= 1 && k <= x.n) usable.push_back(k);
  }
  if (usable.empty()) {
    throw std::invalid_argument("fit_gmm: no candidate k is <= sample size " +
                                std::to_string(x.n));
  }
  std::sort(usable.begin(), usable.end());
  usable.erase(std::unique(usable.begin(), usable.end()), usable.end());

  GmmModel best;
  bool have_best = false;
  for (const int k : usable) {
    RngStream stream(seed, "gmm.init", static_cast<std::uint64_t>(k));
    GmmModel candidate = fit_fixed_k(x, k, stream);
    if (!have_best || candidate.bic < best.bic) {
      best = std::move(candidate);
      have_best = true;
    }
  }
  return best;
}

FeatureMatrix sample_gmm(const GmmModel& model, std::int64_t m, RngStream& stream) {
  FeatureMatrix out(m, model.d);
  std::vector<double> cumulative(model.k);
  double acc = 0.0;
  for (std::int64_t c = 0; c < model.k; ++c) {
    acc += model.weights[c];
    cumulative[c] = acc;
  }
  for (std::int64_t i = 0; i < m; ++i) {
    const double u = stream.uniform01() * acc;
    std::int64_t comp = model.k - 1;
    for (std::int64_t c = 0; c < model.k; ++c) {
      if (u <= cumulative[c]) {
        comp = c;
        break;
      }
    }
    auto row = out.row(i);
    for (std::int64_t j = 0; j < model.d; ++j) {
      const double value = model.mean_at(comp, j) +
                           std::sqrt(model.var_at(comp, j)) * stream.normal();
      row[j] = static_cast<float>(value);
    }
  }
  return out;
}

}  // namespace gadforge
