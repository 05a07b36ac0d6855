#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subw/bnn.hpp"
#include "subw/concentration.hpp"
#include "subw/core.hpp"
#include "subw/errors.hpp"
#include "subw/format.hpp"
#include "subw/moments.hpp"
#include "subw/sampling.hpp"
#include "subw/tail_estimation.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

void ensure_parent_dir(const std::string& path) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

void write_text_file(const std::string& path, const std::string& body) {
  ensure_parent_dir(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw subw::DomainError("cannot open output file: " + path);
  out << body;
  if (!out) throw subw::DomainError("failed writing: " + path);
}

// every command that produces files drops a manifest next to them; rerun
// rebuilds the command from it and must reproduce the outputs byte for byte
void write_manifest(const std::string& path, const std::string& command,
                    const json& params, const json& seeds,
                    const std::vector<std::string>& outputs) {
  json m;
  m["command"] = command;
  m["params"] = params;
  m["seeds"] = seeds;
  m["outputs"] = outputs;
  m["version"] = kVersion;
  write_text_file(path, m.dump(2) + "\n");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw subw::DomainError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw subw::DomainError("invalid JSON in " + path + ": " + e.what());
  }
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  std::string dist = "weibull";
  double theta = 1.0, lambda = 1.0;
  double mean = 0.0, std_dev = 1.0;
  double lo = 0.0, hi = 1.0;
  double cut = 0.95;
  std::uint64_t n = 0;
  std::uint64_t seed = 0, stream = 0, substream = 0;
  std::string out;
};

void run_sample(const SampleArgs& a) {
  if (a.n == 0) throw subw::DomainError("--n must be positive");
  subw::RngStream rng{a.seed, a.stream, a.substream};
  subw::SampleSet s;
  json params;
  params["dist"] = a.dist;
  if (a.dist == "weibull") {
    s = subw::sample_weibull(a.n, subw::TailParams::from_lambda(a.theta, a.lambda), rng);
    params["theta"] = a.theta;
    params["lambda"] = a.lambda;
  } else if (a.dist == "symmetric") {
    s = subw::sample_symmetric_subweibull(a.n, a.theta, rng, a.cut);
    params["theta"] = a.theta;
    params["cut"] = a.cut;
  } else if (a.dist == "gaussian") {
    s = subw::sample_gaussian(a.n, a.mean, a.std_dev, rng);
    params["mean"] = a.mean;
    params["std"] = a.std_dev;
  } else if (a.dist == "uniform") {
    s = subw::sample_uniform(a.n, a.lo, a.hi, rng);
    params["lo"] = a.lo;
    params["hi"] = a.hi;
  } else {
    throw subw::DomainError("unknown distribution: " + a.dist);
  }
  params["n"] = a.n;
  ensure_parent_dir(a.out);
  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw subw::DomainError("cannot open output file: " + a.out);
  subw::write_sample_csv(out, s);
  out.close();

  json seeds;
  seeds["seed"] = a.seed;
  seeds["stream"] = a.stream;
  seeds["substream"] = a.substream;
  write_manifest(a.out + ".manifest.json", "sample", params, seeds, {a.out});
}

SampleArgs sample_args_from_manifest(const json& m) {
  SampleArgs a;
  const json& p = m.at("params");
  a.dist = p.at("dist").get<std::string>();
  a.n = p.at("n").get<std::uint64_t>();
  if (p.contains("theta")) a.theta = p["theta"].get<double>();
  if (p.contains("lambda")) a.lambda = p["lambda"].get<double>();
  if (p.contains("cut")) a.cut = p["cut"].get<double>();
  if (p.contains("mean")) a.mean = p["mean"].get<double>();
  if (p.contains("std")) a.std_dev = p["std"].get<double>();
  if (p.contains("lo")) a.lo = p["lo"].get<double>();
  if (p.contains("hi")) a.hi = p["hi"].get<double>();
  const json& s = m.at("seeds");
  a.seed = s.at("seed").get<std::uint64_t>();
  a.stream = s.at("stream").get<std::uint64_t>();
  a.substream = s.at("substream").get<std::uint64_t>();
  a.out = m.at("outputs").at(0).get<std::string>();
  return a;
}

// --------------------------------------------------------------- estimate

struct EstimateArgs {
  std::string input;
  std::uint64_t k = 0;
  std::string out;
  std::string qq;  // optional
};

void run_estimate(const EstimateArgs& a) {
  std::ifstream in(a.input, std::ios::binary);
  if (!in) throw subw::DomainError("cannot open input file: " + a.input);
  std::vector<double> values = subw::read_sample_csv(in);
  subw::TailEstimate est = subw::estimate_theta(values, a.k);
  write_text_file(a.out, subw::to_json(est) + "\n");
  std::vector<std::string> outputs{a.out};
  if (!a.qq.empty()) {
    write_text_file(a.qq, subw::qq_csv(est.points));
    outputs.push_back(a.qq);
  }
  json params;
  params["input"] = a.input;
  params["k"] = a.k;
  write_manifest(a.out + ".manifest.json", "estimate", params, json::object(), outputs);
}

EstimateArgs estimate_args_from_manifest(const json& m) {
  EstimateArgs a;
  a.input = m.at("params").at("input").get<std::string>();
  a.k = m.at("params").at("k").get<std::uint64_t>();
  const json& outs = m.at("outputs");
  a.out = outs.at(0).get<std::string>();
  if (outs.size() > 1) a.qq = outs.at(1).get<std::string>();
  return a;
}

// -------------------------------------------------------- survival-curves

struct SurvivalArgs {
  std::vector<double> thetas;
  double x_min = -5.0, x_max = 5.0;
  std::uint64_t points = 201;
  double cut = 0.95;
  std::string out;
};

void run_survival_curves(const SurvivalArgs& a) {
  if (a.thetas.empty()) throw subw::DomainError("at least one --theta is required");
  for (double t : a.thetas)
    if (!std::isfinite(t) || t <= 0)
      throw subw::DomainError("theta values must be finite and positive");
  if (a.points == 0) throw subw::DomainError("--points must be positive");
  if (!(a.x_min <= a.x_max)) throw subw::DomainError("grid requires x-min <= x-max");
  if (a.points == 1 && a.x_min != a.x_max)
    throw subw::DomainError("a single grid point needs x-min == x-max");

  // a symmetric odd grid is built from signed offsets so the zero row is an
  // exact 0.0 and the +/- rows are exact negations of each other
  std::vector<double> xs(a.points);
  if (a.x_min == -a.x_max && a.points % 2 == 1 && a.points > 1) {
    const std::int64_t m = static_cast<std::int64_t>(a.points / 2);
    const double step = a.x_max / static_cast<double>(m);
    for (std::int64_t j = -m; j <= m; ++j)
      xs[static_cast<std::size_t>(j + m)] = static_cast<double>(j) * step;
  } else if (a.points == 1) {
    xs[0] = a.x_min;
  } else {
    const double span = a.x_max - a.x_min;
    for (std::uint64_t i = 0; i < a.points; ++i)
      xs[i] = a.x_min + span * static_cast<double>(i) / static_cast<double>(a.points - 1);
  }

  std::string body = "x";
  for (double t : a.thetas) body += ",theta=" + subw::fmt_double(t);
  body += "\n";
  for (double x : xs) {
    body += subw::fmt_double(x);
    for (double t : a.thetas)
      body += "," + subw::fmt_double(subw::symmetric_subweibull_survival(x, t, a.cut));
    body += "\n";
  }
  write_text_file(a.out, body);

  json params;
  params["thetas"] = a.thetas;
  params["x_min"] = a.x_min;
  params["x_max"] = a.x_max;
  params["points"] = a.points;
  params["cut"] = a.cut;
  write_manifest(a.out + ".manifest.json", "survival-curves", params, json::object(),
                 {a.out});
}

SurvivalArgs survival_args_from_manifest(const json& m) {
  SurvivalArgs a;
  const json& p = m.at("params");
  a.thetas = p.at("thetas").get<std::vector<double>>();
  a.x_min = p.at("x_min").get<double>();
  a.x_max = p.at("x_max").get<double>();
  a.points = p.at("points").get<std::uint64_t>();
  a.cut = p.at("cut").get<double>();
  a.out = m.at("outputs").at(0).get<std::string>();
  return a;
}

// -------------------------------------------------------------------- bnn

struct BnnArgs {
  std::string config_path;  // exactly one of config_path / preset
  std::string preset;
  std::uint64_t width_override = 0;  // fig3 presets only, 0 = keep
  std::string out_dir = ".";
  bool record_post = false;
};

struct BnnExperiment {
  subw::MlpConfig cfg;
  std::uint64_t n_draws = 0;
  std::uint64_t k = 0;
  std::uint64_t input_seed = 0, weight_seed = 0;
  std::uint64_t unit = 0;
};

BnnExperiment bnn_preset(const std::string& name, std::uint64_t width_override) {
  BnnExperiment e;
  auto descending_widths = [](std::size_t layers, std::size_t top, std::size_t step) {
    std::vector<std::size_t> w(layers);
    for (std::size_t l = 0; l < layers; ++l) w[l] = top - step * l;
    return w;
  };
  if (name == "fig2-desk") {
    e.cfg.input_dim = 1000;
    e.cfg.widths = descending_widths(10, 100, 10);
    e.cfg.weight_std = 1.0;
    e.n_draws = 10000;
    e.k = 100;
  } else if (name == "fig2-paper") {
    e.cfg.input_dim = 10000;
    e.cfg.widths = descending_widths(100, 1000, 10);
    e.cfg.weight_std = 1.0;
    e.n_draws = 100000;
    e.k = 1000;
  } else if (name == "fig3-desk") {
    e.cfg.input_dim = 1000;
    e.cfg.widths.assign(3, width_override ? width_override : 1);
    e.cfg.weight_std = std::sqrt(2.0);
    e.n_draws = 10000;
    e.k = 100;
  } else if (name == "fig3-paper") {
    e.cfg.input_dim = 10000;
    e.cfg.widths.assign(10, width_override ? width_override : 1);
    e.cfg.weight_std = std::sqrt(2.0);
    e.n_draws = 100000;
    e.k = 1000;
  } else {
    throw subw::DomainError("unknown preset: " + name);
  }
  e.input_seed = 1001;
  e.weight_seed = 1;
  return e;
}

BnnExperiment bnn_experiment_from_json(const json& c) {
  BnnExperiment e;
  try {
    e.cfg.input_dim = c.at("input_dim").get<std::uint64_t>();
    e.cfg.widths = c.at("widths").get<std::vector<std::size_t>>();
    e.cfg.weight_std = c.at("weight_std").get<double>();
    e.cfg.use_bias = c.at("use_bias").get<bool>();
    e.n_draws = c.at("n_draws").get<std::uint64_t>();
    e.k = c.at("k").get<std::uint64_t>();
    e.input_seed = c.at("input_seed").get<std::uint64_t>();
    e.weight_seed = c.at("weight_seed").get<std::uint64_t>();
    if (c.contains("unit")) e.unit = c["unit"].get<std::uint64_t>();
  } catch (const json::exception& err) {
    throw subw::DomainError(std::string("bad bnn config: ") + err.what());
  }
  return e;
}

void run_bnn(const BnnExperiment& e, const std::string& out_dir, bool record_post) {
  subw::validate_config(e.cfg);
  if (e.n_draws == 0) throw subw::DomainError("n_draws must be positive");

  subw::SampleSet input =
      subw::sample_gaussian(e.cfg.input_dim, 0.0, 1.0, {e.input_seed, 0, 0});
  subw::LayerSamples ls =
      subw::sample_unit_prior(e.cfg, input.values, e.n_draws, e.unit,
                              {e.weight_seed, 0, 0}, record_post);
  ls.input_seed = e.input_seed;

  fs::create_directories(out_dir);
  std::vector<std::string> outputs;
  for (std::size_t l = 0; l < ls.pre.size(); ++l) {
    const std::string stem = out_dir + "/layer_" + std::to_string(l + 1);
    subw::SampleSet layer;
    layer.values = ls.pre[l];
    layer.generator = "bnn(layer=" + std::to_string(l + 1) +
                      ",unit=" + std::to_string(e.unit) + ")";
    layer.stream = ls.weight_stream;
    std::ofstream csv(stem + ".csv", std::ios::binary);
    if (!csv) throw subw::DomainError("cannot open output file: " + stem + ".csv");
    subw::write_sample_csv(csv, layer);
    csv.close();
    outputs.push_back(stem + ".csv");
    if (record_post) {
      subw::SampleSet post = layer;
      post.values = ls.post[l];
      post.generator = "bnn_post(layer=" + std::to_string(l + 1) +
                       ",unit=" + std::to_string(e.unit) + ")";
      std::ofstream pcsv(stem + "_post.csv", std::ios::binary);
      subw::write_sample_csv(pcsv, post);
      outputs.push_back(stem + "_post.csv");
    }
    subw::TailEstimate est = subw::estimate_theta(ls.pre[l], e.k);
    write_text_file(stem + "_estimate.json", subw::to_json(est) + "\n");
    outputs.push_back(stem + "_estimate.json");
  }

  json params;
  params["input_dim"] = e.cfg.input_dim;
  params["widths"] = e.cfg.widths;
  params["weight_std"] = e.cfg.weight_std;
  params["use_bias"] = e.cfg.use_bias;
  params["n_draws"] = e.n_draws;
  params["k"] = e.k;
  params["unit"] = e.unit;
  params["record_post"] = record_post;
  params["out_dir"] = out_dir;
  json seeds;
  seeds["input_seed"] = e.input_seed;
  seeds["weight_seed"] = e.weight_seed;
  write_manifest(out_dir + "/manifest.json", "bnn", params, seeds, outputs);
}

void run_bnn_args(const BnnArgs& a) {
  BnnExperiment e;
  if (!a.preset.empty() && !a.config_path.empty())
    throw subw::DomainError("--preset and --config are mutually exclusive");
  if (!a.preset.empty()) {
    e = bnn_preset(a.preset, a.width_override);
  } else if (!a.config_path.empty()) {
    e = bnn_experiment_from_json(load_json_file(a.config_path));
    if (a.width_override)
      e.cfg.widths.assign(e.cfg.widths.size(), a.width_override);
  } else {
    throw subw::DomainError("one of --preset or --config is required");
  }
  run_bnn(e, a.out_dir, a.record_post);
}

void run_bnn_from_manifest(const json& m) {
  const json& p = m.at("params");
  BnnExperiment e = bnn_experiment_from_json(json{
      {"input_dim", p.at("input_dim")},
      {"widths", p.at("widths")},
      {"weight_std", p.at("weight_std")},
      {"use_bias", p.at("use_bias")},
      {"n_draws", p.at("n_draws")},
      {"k", p.at("k")},
      {"input_seed", m.at("seeds").at("input_seed")},
      {"weight_seed", m.at("seeds").at("weight_seed")},
      {"unit", p.at("unit")}});
  run_bnn(e, p.at("out_dir").get<std::string>(), p.at("record_post").get<bool>());
}

// ------------------------------------------------------------------ bound

struct BoundArgs {
  std::string method = "corollary";
  double x = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t n = 0;
  double theta = 0;
  double K = 0;
};

void run_bound(const BoundArgs& a) {
  const bool has_x = !std::isnan(a.x);
  const bool has_alpha = !std::isnan(a.alpha);
  if (has_x == has_alpha)
    throw subw::DomainError("exactly one of --x or --alpha is required");
  if (a.method == "corollary") {
    double v = has_x
                   ? static_cast<double>(subw::sum_tail_bound(a.x, a.n, a.theta, a.K))
                   : subw::confidence_radius(subw::Probability(a.alpha), a.n,
                                             a.theta, a.K);
    std::cout << subw::fmt_double(v) << "\n";
  } else if (a.method == "boucheron") {
    if (!has_x) throw subw::DomainError("method boucheron requires --x");
    // validated here so a theta out of the inequality's range reads as a
    // usage error rather than a runtime one
    if (a.theta > 1)
      throw subw::DomainError(
          "out of validity: method boucheron requires theta <= 1");
    std::cout << subw::fmt_double(subw::boucheron_bound(a.x, a.n, a.theta, a.K))
              << "\n";
  } else {
    throw subw::DomainError("unknown method: " + a.method);
  }
}

// ------------------------------------------------------------------ rerun

void run_rerun(const std::string& manifest_path) {
  json m = load_json_file(manifest_path);
  std::string command;
  try {
    command = m.at("command").get<std::string>();
    if (command == "sample") {
      run_sample(sample_args_from_manifest(m));
    } else if (command == "estimate") {
      run_estimate(estimate_args_from_manifest(m));
    } else if (command == "survival-curves") {
      run_survival_curves(survival_args_from_manifest(m));
    } else if (command == "bnn") {
      run_bnn_from_manifest(m);
    } else {
      throw subw::DomainError("manifest has unknown command: " + command);
    }
  } catch (const json::exception& e) {
    throw subw::DomainError(std::string("bad manifest: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sub-Weibull tail toolkit: sampling, estimation, bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  SampleArgs sa;
  CLI::App* sample = app.add_subcommand("sample", "Draw a seeded sample to CSV");
  sample->add_option("--dist", sa.dist,
                     "weibull | symmetric | gaussian | uniform");
  sample->add_option("--theta", sa.theta, "tail parameter");
  sample->add_option("--lambda", sa.lambda, "Weibull scale");
  sample->add_option("--mean", sa.mean, "Gaussian mean");
  sample->add_option("--std", sa.std_dev, "Gaussian standard deviation");
  sample->add_option("--lo", sa.lo, "uniform lower endpoint");
  sample->add_option("--hi", sa.hi, "uniform upper endpoint");
  sample->add_option("--cut", sa.cut, "symmetric construction cut point");
  sample->add_option("--n", sa.n, "number of draws")->required();
  sample->add_option("--seed", sa.seed, "RNG seed")->required();
  sample->add_option("--stream", sa.stream, "RNG stream id");
  sample->add_option("--substream", sa.substream, "RNG substream");
  sample->add_option("--out", sa.out, "output CSV path")->required();
  sample->callback([&] { run_sample(sa); });

  EstimateArgs ea;
  CLI::App* estimate =
      app.add_subcommand("estimate", "Tail-parameter estimate from a sample CSV");
  estimate->add_option("--in", ea.input, "input CSV")->required();
  estimate->add_option("--k", ea.k, "number of upper order statistics")->required();
  estimate->add_option("--out", ea.out, "output JSON path")->required();
  estimate->add_option("--qq", ea.qq, "also write the regression points as CSV");
  estimate->callback([&] { run_estimate(ea); });

  SurvivalArgs va;
  CLI::App* curves = app.add_subcommand(
      "survival-curves", "Symmetrized survival curves over an x grid");
  curves->add_option("--theta", va.thetas, "tail parameters, one column each")
      ->required()
      ->expected(-1);
  curves->add_option("--x-min", va.x_min, "grid start");
  curves->add_option("--x-max", va.x_max, "grid end");
  curves->add_option("--points", va.points, "grid size");
  curves->add_option("--cut", va.cut, "construction cut point");
  curves->add_option("--out", va.out, "output CSV path")->required();
  curves->callback([&] { run_survival_curves(va); });

  BnnArgs ba;
  CLI::App* bnn = app.add_subcommand(
      "bnn", "MLP prior draws and per-layer tail estimates");
  bnn->add_option("--config", ba.config_path, "experiment config JSON");
  bnn->add_option("--preset", ba.preset,
                  "fig2-desk | fig2-paper | fig3-desk | fig3-paper");
  bnn->add_option("--width", ba.width_override, "override every layer width");
  bnn->add_option("--out-dir", ba.out_dir, "output directory")->required();
  bnn->add_flag("--record-post", ba.record_post,
                "also record post-nonlinearity draws");
  bnn->callback([&] { run_bnn_args(ba); });

  BoundArgs bo;
  CLI::App* bound =
      app.add_subcommand("bound", "Concentration bound for a sum of n draws");
  bound->add_option("--method", bo.method, "corollary | boucheron");
  bound->add_option("--x", bo.x, "deviation at which to evaluate the bound");
  bound->add_option("--alpha", bo.alpha,
                    "tail mass; prints the matching confidence radius");
  bound->add_option("--n", bo.n, "number of summands")->required();
  bound->add_option("--theta", bo.theta, "tail parameter")->required();
  bound->add_option("--K", bo.K, "sum constant K_theta")->required();
  bound->callback([&] { run_bound(bo); });

  std::string manifest_path;
  CLI::App* rerun =
      app.add_subcommand("rerun", "Reproduce a previous run from its manifest");
  rerun->add_option("--manifest", manifest_path, "manifest JSON path")->required();
  rerun->callback([&] { run_rerun(manifest_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const subw::DegenerateSampleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const subw::OutOfValidityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const subw::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
