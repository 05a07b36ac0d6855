#include "subw/moments.hpp"

#include <algorithm>
#include <cmath>

#include "subw/errors.hpp"
#include "subw/format.hpp"

namespace subw {

namespace {

struct OlsFit {
  double slope, intercept, r_squared;
};

OlsFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  double xm = 0, ym = 0;
  for (std::size_t i = 0; i < m; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= double(m);
  ym /= double(m);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
    syy += (y[i] - ym) * (y[i] - ym);
  }
  const double slope = sxy / sxx;
  double r2 = 1.0;
  if (syy > 0.0) {
    double ssres = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = y[i] - ym - slope * (x[i] - xm);
      ssres += r * r;
    }
    r2 = std::clamp(1.0 - ssres / syy, 0.0, 1.0);
  }
  return {slope, ym - slope * xm, r2};
}

}  // namespace

double empirical_moment_norm(const std::vector<double>& values, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("moment order k must be positive");
  if (values.empty()) throw DomainError("empty sample");
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : values) acc += std::pow(std::fabs(v) / m, k);
  return m * std::pow(acc / double(values.size()), 1.0 / k);
}

std::vector<double> default_orders() {
  std::vector<double> o(30);
  for (int i = 0; i < 30; ++i) o[i] = double(i + 1);
  return o;
}

MomentProfile moment_growth_profile(const std::vector<double>& values,
                                    const std::vector<double>& orders) {
  if (orders.empty()) throw DomainError("orders must be nonempty");
  for (std::size_t i = 0; i + 1 < orders.size(); ++i)
    if (!(orders[i] < orders[i + 1])) throw DomainError("orders must be increasing");
  MomentProfile p;
  p.orders = orders;
  p.norms.reserve(orders.size());
  for (double k : orders) p.norms.push_back(empirical_moment_norm(values, k));
  p.n = values.size();
  return p;
}

std::vector<std::size_t> retained_order_indices(const MomentProfile& p) {
  std::vector<std::size_t> idx;
  if (p.n == 0) {
    idx.resize(p.orders.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
  }
  const double cutoff = std::log(double(p.n));
  for (std::size_t i = 0; i < p.orders.size(); ++i)
    if (p.orders[i] <= cutoff) idx.push_back(i);
  const std::size_t floor_count = std::min<std::size_t>(3, p.orders.size());
  while (idx.size() < floor_count) idx.push_back(idx.size());
  return idx;
}

MomentGrowthFit fit_theta_from_moments(const MomentProfile& p, bool use_all_orders) {
  if (p.orders.size() != p.norms.size()) throw DomainError("profile lengths differ");
  if (p.orders.size() < 3) throw DomainError("fit needs at least 3 orders");
  std::vector<std::size_t> idx;
  if (use_all_orders) {
    idx.resize(p.orders.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  } else {
    idx = retained_order_indices(p);
  }
  std::vector<double> lx, ly;
  lx.reserve(idx.size());
  ly.reserve(idx.size());
  for (std::size_t i : idx) {
    if (!(p.norms[i] > 0.0))
      throw DegenerateSampleError("zero moment norm (all-zero sample)");
    lx.push_back(std::log(p.orders[i]));
    ly.push_back(std::log(p.norms[i]));
  }
  const OlsFit f = ols(lx, ly);
  MomentGrowthFit out;
  out.theta_hat = f.slope;
  out.log_K2_hat = f.intercept;
  out.r_squared = f.r_squared;
  out.ratio_min = out.ratio_max = p.norms[idx[0]] / std::pow(p.orders[idx[0]], f.slope);
  for (std::size_t i : idx) {
    const double r = p.norms[i] / std::pow(p.orders[i], f.slope);
    out.ratio_min = std::min(out.ratio_min, r);
    out.ratio_max = std::max(out.ratio_max, r);
  }
  return out;
}

double log_analytic_abs_moment(std::string_view dist, double k, double scale, double theta) {
  if (!(k > 0.0)) throw DomainError("moment order k must be positive");
  if (!(scale > 0.0)) throw DomainError("scale must be positive");
  if (dist == "gaussian")
    return k * std::log(scale) + 0.5 * k * std::log(2.0) + std::lgamma(0.5 * (k + 1.0)) -
           0.5 * std::log(M_PI);
  if (dist == "exponential") return k * std::log(scale) + std::lgamma(k + 1.0);
  if (dist == "weibull") {
    if (!(theta > 0.0)) throw DomainError("theta must be positive");
    return k * std::log(scale) + std::lgamma(k * theta + 1.0);
  }
  throw DomainError("unsupported distribution tag: " + std::string(dist));
}

double analytic_abs_moment(std::string_view dist, double k, double scale, double theta) {
  return std::exp(log_analytic_abs_moment(dist, k, scale, theta));
}

MomentProfile analytic_moment_profile(std::string_view dist, const std::vector<double>& orders,
                                      double scale, double theta) {
  if (orders.empty()) throw DomainError("orders must be nonempty");
  MomentProfile p;
  p.orders = orders;
  p.norms.reserve(orders.size());
  for (double k : orders)
    p.norms.push_back(std::exp(log_analytic_abs_moment(dist, k, scale, theta) / k));
  p.n = 0;
  return p;
}

namespace {

std::string json_array(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += fmt_double(v[i]);
  }
  return s + "]";
}

}  // namespace

std::string to_json(const MomentProfile& p) {
  return "{\"orders\":" + json_array(p.orders) + ",\"norms\":" + json_array(p.norms) +
         ",\"n\":" + std::to_string(p.n) + "}";
}

std::string to_json(const MomentGrowthFit& f) {
  return "{\"theta_hat\":" + fmt_double(f.theta_hat) +
         ",\"log_K2_hat\":" + fmt_double(f.log_K2_hat) +
         ",\"ratio_min\":" + fmt_double(f.ratio_min) +
         ",\"ratio_max\":" + fmt_double(f.ratio_max) +
         ",\"r_squared\":" + fmt_double(f.r_squared) + "}";
}

}  // namespace subw
