#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "subw/bnn.hpp"
#include "subw/errors.hpp"
#include "subw/rng.hpp"
#include "subw/sampling.hpp"

using namespace subw;

namespace {

MlpConfig make_cfg(std::size_t input_dim, std::vector<std::size_t> widths,
                   double std_dev = 1.0, bool bias = false) {
  MlpConfig c;
  c.input_dim = input_dim;
  c.widths = std::move(widths);
  c.weight_std = std_dev;
  c.use_bias = bias;
  return c;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("relu") {
  CHECK(relu(-3.0) == 0.0);
  CHECK(relu(0.0) == 0.0);
  CHECK(relu(2.5) == 2.5);
}

TEST_CASE("forward recursion hand checks") {
  // single 1x1 layer: g = w x
  auto g1 = forward_pre_activations(make_cfg(1, {1}), {2.0},
                                    {{1, 1, {0.5}}});
  REQUIRE(g1.size() == 1);
  CHECK(g1[0] == std::vector<double>{1.0});

  // two 1x1 layers: g2 = w2 relu(w1 x)
  auto g2 = forward_pre_activations(make_cfg(1, {1, 1}), {1.5},
                                    {{1, 1, {2.0}}, {1, 1, {3.0}}});
  CHECK(g2[1][0] == 9.0);
  auto g2neg = forward_pre_activations(make_cfg(1, {1, 1}), {1.5},
                                       {{1, 1, {-2.0}}, {1, 1, {3.0}}});
  CHECK(g2neg[0][0] == -3.0);
  CHECK(g2neg[1][0] == 0.0);

  // zero input, no bias: everything is zero
  auto gz = forward_pre_activations(make_cfg(3, {2, 2}), {0.0, 0.0, 0.0},
                                    {{2, 3, {1, 2, 3, 4, 5, 6}},
                                     {2, 2, {1, 1, 1, 1}}});
  for (const auto& layer : gz)
    for (double v : layer) CHECK(v == 0.0);
}

TEST_CASE("bias column is appended last") {
  // cols = input_dim + 1; g = w x + b
  auto g = forward_pre_activations(make_cfg(1, {1}, 1.0, true), {2.0},
                                   {{1, 2, {3.0, 0.25}}});
  CHECK(g[0][0] == 6.25);
  // zero input with bias enabled is not degenerate
  auto gz = forward_pre_activations(make_cfg(1, {1}, 1.0, true), {0.0},
                                    {{1, 2, {3.0, 0.25}}});
  CHECK(gz[0][0] == 0.25);
}

TEST_CASE("layer outputs have the configured widths") {
  MlpConfig cfg = make_cfg(4, {3, 5, 2});
  std::vector<LayerWeights> w{
      {3, 4, std::vector<double>(12, 0.1)},
      {5, 3, std::vector<double>(15, 0.1)},
      {2, 5, std::vector<double>(10, 0.1)}};
  auto g = forward_pre_activations(cfg, {1, 2, 3, 4}, w);
  REQUIRE(g.size() == 3);
  CHECK(g[0].size() == 3);
  CHECK(g[1].size() == 5);
  CHECK(g[2].size() == 2);
}

TEST_CASE("forward validates shapes") {
  MlpConfig cfg = make_cfg(2, {2});
  CHECK_THROWS_AS(forward_pre_activations(cfg, {1.0}, {{2, 2, {1, 2, 3, 4}}}),
                  DomainError);
  CHECK_THROWS_AS(forward_pre_activations(cfg, {1.0, 2.0}, {}), DomainError);
  CHECK_THROWS_AS(
      forward_pre_activations(cfg, {1.0, 2.0}, {{2, 3, {1, 2, 3, 4, 5, 6}}}),
      DomainError);
  CHECK_THROWS_AS(
      forward_pre_activations(cfg, {1.0, 2.0}, {{2, 2, {1, 2, 3}}}),
      DomainError);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(validate_config(make_cfg(0, {1})), DomainError);
  CHECK_THROWS_AS(validate_config(make_cfg(1, {})), DomainError);
  CHECK_THROWS_AS(validate_config(make_cfg(1, {1, 0})), DomainError);
  CHECK_THROWS_AS(validate_config(make_cfg(1, {1}, 0.0)), DomainError);
  CHECK_NOTHROW(validate_config(make_cfg(1, {1})));

  auto input = std::vector<double>{1.0};
  CHECK_THROWS_AS(sample_unit_prior(make_cfg(1, {2}), input, 5, 2, {1, 0, 0}),
                  DomainError);
  CHECK_THROWS_AS(sample_unit_prior(make_cfg(1, {2}), input, 0, 0, {1, 0, 0}),
                  DomainError);
  CHECK_THROWS_AS(
      sample_unit_prior(make_cfg(2, {2}), input, 5, 0, {1, 0, 0}),
      DomainError);
}

TEST_CASE("layer-1 draws through a unit vector are standard normal") {
  MlpConfig cfg = make_cfg(3, {1});
  std::vector<double> e1{1.0, 0.0, 0.0};
  LayerSamples ls = sample_unit_prior(cfg, e1, 10000, 0, {17, 0, 0});
  std::vector<double> v = ls.pre[0];
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double f = normal_cdf(v[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  CHECK(d * std::sqrt(n) < 1.63);
}

TEST_CASE("draws are deterministic and replayable from the stream") {
  MlpConfig cfg = make_cfg(3, {1, 1}, 2.0);
  std::vector<double> x{0.3, -1.2, 0.7};
  LayerSamples a = sample_unit_prior(cfg, x, 6, 0, {21, 0, 0});
  LayerSamples b = sample_unit_prior(cfg, x, 6, 0, {21, 0, 0});
  CHECK(a.pre == b.pre);

  // draw 5 regenerated by hand from substream 5: layer-1 row, then the
  // single layer-2 weight
  CounterRng rng({21, 0, 5});
  double acc = 0;
  for (double xi : x) acc += 2.0 * probit(rng.next_open()) * xi;
  double w2 = 2.0 * probit(rng.next_open());
  CHECK(a.pre[0][5] == acc);
  CHECK(a.pre[1][5] == w2 * relu(acc));

  // single-draw run equals the first draw of a longer run
  LayerSamples first = sample_unit_prior(cfg, x, 1, 0, {21, 0, 0});
  CHECK(first.pre[0][0] == a.pre[0][0]);
  CHECK(first.pre[1][0] == a.pre[1][0]);
}

TEST_CASE("explicit-weight forward reproduces streamed draws bit for bit") {
  MlpConfig cfg = make_cfg(2, {3, 2}, 0.8);
  std::vector<double> x{1.1, -0.4};
  LayerSamples ls = sample_unit_prior(cfg, x, 4, 0, {33, 0, 0});
  for (std::size_t d = 0; d < 4; ++d) {
    CounterRng rng({33, 0, d});
    std::vector<LayerWeights> w;
    std::size_t prev = cfg.input_dim;
    for (std::size_t width : cfg.widths) {
      LayerWeights lw;
      lw.rows = width;
      lw.cols = prev;
      for (std::size_t i = 0; i < width * prev; ++i)
        lw.data.push_back(0.8 * probit(rng.next_open()));
      w.push_back(std::move(lw));
      prev = width;
    }
    auto g = forward_pre_activations(cfg, x, w);
    CHECK(g[0][0] == ls.pre[0][d]);
    CHECK(g[1][0] == ls.pre[1][d]);
  }
}

TEST_CASE("scaling layer-1 weights scales every layer's output linearly") {
  MlpConfig cfg = make_cfg(2, {2, 2});
  std::vector<double> x{0.5, 2.0};
  std::vector<LayerWeights> w{{2, 2, {0.2, -1.0, 0.7, 0.3}},
                              {2, 2, {1.5, -0.5, 0.25, 1.0}}};
  auto base = forward_pre_activations(cfg, x, w);
  const double c = 3.5;
  std::vector<LayerWeights> scaled = w;
  for (double& v : scaled[0].data) v *= c;
  auto out = forward_pre_activations(cfg, x, scaled);
  for (std::size_t l = 0; l < 2; ++l)
    for (std::size_t r = 0; r < 2; ++r)
      CHECK(out[l][r] == doctest::Approx(c * base[l][r]).epsilon(1e-15));
}

TEST_CASE("zero input with no bias degenerates the estimates") {
  MlpConfig cfg = make_cfg(3, {1, 1});
  std::vector<double> zero(3, 0.0);
  LayerSamples ls = sample_unit_prior(cfg, zero, 100, 0, {2, 0, 0});
  for (double v : ls.pre[0]) CHECK(v == 0.0);
  CHECK_THROWS_AS(layer_theta_estimates(ls, 10), DegenerateSampleError);

  // with a bias column the draws come from the bias weights instead
  MlpConfig biased = make_cfg(3, {1, 1}, 1.0, true);
  LayerSamples lb = sample_unit_prior(biased, zero, 100, 0, {2, 0, 0});
  bool any_nonzero = false;
  for (double v : lb.pre[0]) any_nonzero = any_nonzero || v != 0.0;
  CHECK(any_nonzero);
}

TEST_CASE("post-nonlinearity recording is the relu image of pre") {
  MlpConfig cfg = make_cfg(2, {2, 1});
  std::vector<double> x{1.0, -1.0};
  LayerSamples ls = sample_unit_prior(cfg, x, 50, 0, {9, 0, 0}, true);
  REQUIRE(ls.post.size() == 2);
  for (std::size_t l = 0; l < 2; ++l)
    for (std::size_t d = 0; d < 50; ++d)
      CHECK(ls.post[l][d] == relu(ls.pre[l][d]));

  LayerSamples no_post = sample_unit_prior(cfg, x, 50, 0, {9, 0, 0});
  CHECK(no_post.post.empty());
  CHECK(no_post.pre == ls.pre);
}

TEST_CASE("per-layer estimates propagate the regression contract") {
  MlpConfig cfg = make_cfg(100, {1, 1, 1}, std::sqrt(2.0));
  auto input = sample_gaussian(100, 0.0, 1.0, {1001, 0, 0});
  LayerSamples ls = sample_unit_prior(cfg, input.values, 2000, 0, {1, 0, 0});
  auto est = layer_theta_estimates(ls, 60);
  REQUIRE(est.size() == 3);
  for (const auto& e : est) {
    CHECK(e.n == 2000);
    CHECK(e.k_used == 60);
    CHECK(e.theta_hat > 0.0);
  }
  // deeper layers read heavier
  CHECK(est[0].theta_hat < est[2].theta_hat);
}
