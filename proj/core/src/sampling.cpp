#include "subw/sampling.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "subw/errors.hpp"
#include "subw/format.hpp"

namespace subw {

namespace {

void check_n(std::size_t n) {
  if (n == 0) throw DomainError("sample size must be positive");
}

std::string tag(const std::string& name, std::initializer_list<std::pair<const char*, double>> ps) {
  std::string s = name + "(";
  bool first = true;
  for (const auto& [k, v] : ps) {
    if (!first) s += ",";
    s += std::string(k) + "=" + fmt_double(v);
    first = false;
  }
  return s + ")";
}

}  // namespace

SampleSet sample_weibull(std::size_t n, const TailParams& p, const RngStream& rng) {
  check_n(n);
  CounterRng g(rng);
  SampleSet s{{}, tag("weibull", {{"theta", p.theta}, {"lambda", p.scale_lambda}}), rng};
  s.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = g.next_halfopen();
    s.values.push_back(p.scale_lambda * std::pow(-std::log1p(-u), p.theta));
  }
  return s;
}

SampleSet sample_symmetric_subweibull(std::size_t n, double theta, const RngStream& rng,
                                      double cut) {
  check_n(n);
  if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("theta must be positive");
  if (!(cut > 0.0 && cut < 1.0)) throw DomainError("cut must lie in (0,1)");
  const double L = -std::log1p(-cut);
  const double A = 0.5 * std::exp(L);
  const double Lt = std::pow(L, theta);
  CounterRng g(rng);
  SampleSet s{{}, tag("symmetric-subweibull", {{"theta", theta}, {"cut", cut}}), rng};
  s.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = g.next_open();
    // invert S: u <= 1/2 falls in the upper branch, u > 1/2 mirrors it
    if (u <= 0.5) {
      s.values.push_back(std::pow(std::log(A / u), theta) - Lt);
    } else {
      s.values.push_back(-(std::pow(std::log(A / (1.0 - u)), theta) - Lt));
    }
  }
  return s;
}

SampleSet sample_gaussian(std::size_t n, double mean, double std, const RngStream& rng) {
  check_n(n);
  if (!(std > 0.0) || !std::isfinite(std) || !std::isfinite(mean))
    throw DomainError("gaussian requires finite mean and positive std");
  CounterRng g(rng);
  SampleSet s{{}, tag("gaussian", {{"mean", mean}, {"std", std}}), rng};
  s.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.values.push_back(mean + std * probit(g.next_open()));
  return s;
}

SampleSet sample_uniform(std::size_t n, double lo, double hi, const RngStream& rng) {
  check_n(n);
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("uniform requires lo < hi, both finite");
  CounterRng g(rng);
  SampleSet s{{}, tag("uniform", {{"lo", lo}, {"hi", hi}}), rng};
  s.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.values.push_back(lo + (hi - lo) * g.next_halfopen());
  return s;
}

void write_sample_csv(std::ostream& out, const SampleSet& s) {
  out << "# generator=" << s.generator << " seed=" << s.stream.seed
      << " stream=" << s.stream.stream_id << " substream=" << s.stream.substream
      << " n=" << s.n() << "\n";
  out << "value\n";
  for (double v : s.values) out << fmt_double(v) << "\n";
}

std::vector<double> read_sample_csv(std::istream& in) {
  std::vector<double> vals;
  std::string line;
  bool first_noncomment = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    const std::string field = comma == std::string::npos ? line : line.substr(0, comma);
    double v = 0.0;
    const auto* b = field.data();
    const auto* e = field.data() + field.size();
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{} || res.ptr != e) {
      if (first_noncomment) {  // header row
        first_noncomment = false;
        continue;
      }
      throw DomainError("malformed CSV row: " + line);
    }
    first_noncomment = false;
    vals.push_back(v);
  }
  if (vals.empty()) throw DomainError("CSV contains no data rows");
  return vals;
}

}  // namespace subw
