#include "subw/bnn.hpp"

#include <cmath>

#include "subw/errors.hpp"

namespace subw {

void validate_config(const MlpConfig& cfg) {
  if (cfg.input_dim == 0) throw DomainError("input_dim must be positive");
  if (cfg.widths.empty()) throw DomainError("at least one layer is required");
  for (std::size_t w : cfg.widths)
    if (w == 0) throw DomainError("layer widths must be positive");
  if (!std::isfinite(cfg.weight_std) || cfg.weight_std <= 0)
    throw DomainError("weight_std must be finite and positive");
}

double relu(double x) { return x > 0 ? x : 0.0; }

std::vector<std::vector<double>> forward_pre_activations(
    const MlpConfig& cfg, const std::vector<double>& input,
    const std::vector<LayerWeights>& weights) {
  validate_config(cfg);
  if (input.size() != cfg.input_dim)
    throw DomainError("input length does not match input_dim");
  if (weights.size() != cfg.widths.size())
    throw DomainError("one weight matrix per layer is required");

  const std::size_t bias = cfg.use_bias ? 1 : 0;
  std::vector<std::vector<double>> g(cfg.widths.size());
  std::vector<double> h = input;
  for (std::size_t l = 0; l < cfg.widths.size(); ++l) {
    const LayerWeights& W = weights[l];
    if (W.rows != cfg.widths[l] || W.cols != h.size() + bias ||
        W.data.size() != W.rows * W.cols)
      throw DomainError("weight matrix shape does not match config");
    g[l].assign(W.rows, 0.0);
    for (std::size_t r = 0; r < W.rows; ++r) {
      const double* row = W.data.data() + r * W.cols;
      double acc = 0;
      for (std::size_t j = 0; j < h.size(); ++j) acc += row[j] * h[j];
      if (bias) acc += row[W.cols - 1];
      g[l][r] = acc;
    }
    h.resize(g[l].size());
    for (std::size_t r = 0; r < h.size(); ++r) h[r] = relu(g[l][r]);
  }
  return g;
}

LayerSamples sample_unit_prior(const MlpConfig& cfg,
                               const std::vector<double>& input,
                               std::size_t n_draws,
                               const std::vector<std::size_t>& unit_index_per_layer,
                               RngStream weight_stream, bool record_post) {
  validate_config(cfg);
  if (input.size() != cfg.input_dim)
    throw DomainError("input length does not match input_dim");
  if (n_draws == 0) throw DomainError("n_draws must be positive");
  const std::size_t L = cfg.widths.size();
  if (unit_index_per_layer.size() != L)
    throw DomainError("one unit index per layer is required");
  for (std::size_t l = 0; l < L; ++l)
    if (unit_index_per_layer[l] >= cfg.widths[l])
      throw DomainError("unit index out of range");

  LayerSamples ls;
  ls.config = cfg;
  ls.unit_index = unit_index_per_layer;
  ls.n_draws = n_draws;
  ls.weight_stream = weight_stream;
  ls.pre.assign(L, std::vector<double>(n_draws));
  if (record_post) ls.post.assign(L, std::vector<double>(n_draws));

  // weights are never materialized: each row's Gaussians are folded into the
  // dot product as they come off the stream, in the frozen order
  std::vector<double> g, h;
  for (std::size_t d = 0; d < n_draws; ++d) {
    CounterRng rng({weight_stream.seed, weight_stream.stream_id,
                    weight_stream.substream + d});
    const std::vector<double>* prev = &input;
    for (std::size_t l = 0; l < L; ++l) {
      const std::size_t rows = cfg.widths[l];
      g.assign(rows, 0.0);
      for (std::size_t r = 0; r < rows; ++r) {
        double acc = 0;
        for (double hj : *prev)
          acc += cfg.weight_std * probit(rng.next_open()) * hj;
        if (cfg.use_bias) acc += cfg.weight_std * probit(rng.next_open());
        g[r] = acc;
      }
      ls.pre[l][d] = g[unit_index_per_layer[l]];
      if (record_post) ls.post[l][d] = relu(g[unit_index_per_layer[l]]);
      h.resize(rows);
      for (std::size_t r = 0; r < rows; ++r) h[r] = relu(g[r]);
      prev = &h;
    }
  }
  return ls;
}

LayerSamples sample_unit_prior(const MlpConfig& cfg,
                               const std::vector<double>& input,
                               std::size_t n_draws, std::size_t unit,
                               RngStream weight_stream, bool record_post) {
  return sample_unit_prior(cfg, input, n_draws,
                           std::vector<std::size_t>(cfg.widths.size(), unit),
                           weight_stream, record_post);
}

std::vector<TailEstimate> layer_theta_estimates(const LayerSamples& ls,
                                                std::size_t k) {
  std::vector<TailEstimate> out;
  out.reserve(ls.pre.size());
  for (const auto& layer : ls.pre) out.push_back(estimate_theta(layer, k));
  return out;
}

}  // namespace subw
