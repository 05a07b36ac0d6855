#pragma once

#include <cstdint>
#include <vector>

#include "subw/rng.hpp"
#include "subw/tail_estimation.hpp"

namespace subw {

// Fully connected ReLU network. widths[l] is the number of units in hidden
// layer l+1; the input layer has input_dim entries. When use_bias is set,
// every layer consumes one extra Gaussian per row (applied by appending a
// constant 1 to the previous layer's output).
struct MlpConfig {
  std::size_t input_dim = 0;
  std::vector<std::size_t> widths;
  double weight_std = 1.0;
  bool use_bias = false;
};

void validate_config(const MlpConfig& cfg);

double relu(double x);

// One layer's weight matrix, row-major; cols includes the bias column (last)
// when the config uses biases.
struct LayerWeights {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;
};

// Exact recursion g(l) = W(l) h(l-1), h(l) = relu(g(l)), h(0) = input.
// Returns the pre-nonlinearity vector of every layer.
std::vector<std::vector<double>> forward_pre_activations(
    const MlpConfig& cfg, const std::vector<double>& input,
    const std::vector<LayerWeights>& weights);

// Draws of one designated unit per layer under the Gaussian weight prior,
// input held fixed. pre[l][d] is the unit's pre-nonlinearity in layer l+1 at
// draw d; post is parallel and only filled on request.
struct LayerSamples {
  MlpConfig config;
  std::vector<std::size_t> unit_index;
  std::vector<std::vector<double>> pre;
  std::vector<std::vector<double>> post;
  std::size_t n_draws = 0;
  RngStream weight_stream;
  std::uint64_t input_seed = 0;  // provenance only; the input is passed in
};

// Draw d regenerates every weight from substream weight_stream.substream + d,
// consumed layer by layer, row-major within a layer, bias entry last in each
// row. Draws are therefore independent of evaluation order and can be
// replayed individually.
LayerSamples sample_unit_prior(const MlpConfig& cfg,
                               const std::vector<double>& input,
                               std::size_t n_draws,
                               const std::vector<std::size_t>& unit_index_per_layer,
                               RngStream weight_stream,
                               bool record_post = false);

// same designated unit in every layer
LayerSamples sample_unit_prior(const MlpConfig& cfg,
                               const std::vector<double>& input,
                               std::size_t n_draws, std::size_t unit,
                               RngStream weight_stream,
                               bool record_post = false);

// Tail estimate per layer from the recorded pre-nonlinearity draws.
std::vector<TailEstimate> layer_theta_estimates(const LayerSamples& ls,
                                                std::size_t k);

}  // namespace subw
