#include "subw/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "subw/errors.hpp"
#include "subw/format.hpp"
#include "subw/tail_estimation.hpp"

namespace subw {

namespace {

void check_theta(double theta) {
  if (!std::isfinite(theta) || theta <= 0)
    throw DomainError("theta must be finite and positive");
}

void check_K(double K) {
  if (!std::isfinite(K) || K <= 0)
    throw DomainError("K must be finite and positive");
}

}  // namespace

ConstantChain chain_from_K2(double K2, double theta) {
  check_theta(theta);
  check_K(K2);
  ConstantChain c;
  c.theta = theta;
  c.K2 = K2;
  c.K3 = K2 * std::pow(2.0 * M_E / theta, theta);
  c.K4 = c.K3 / std::pow(M_LN2, theta);
  c.K1 = c.K4;
  return c;
}

double calibrate_K4(const std::vector<double>& values, double theta) {
  check_theta(theta);
  if (values.empty()) throw DomainError("empty sample");
  double m = 0;
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("sample contains non-finite value");
    m = std::max(m, std::fabs(v));
  }
  if (m == 0) return 0.0;  // mean is 1 for every K, infimum is 0

  const double inv_theta = 1.0 / theta;
  auto mean_at = [&](double K) {
    double acc = 0;
    for (double v : values)
      acc += std::exp(std::pow(std::fabs(v) / K, inv_theta));
    return acc / static_cast<double>(values.size());
  };

  // Each term at K = m / (ln 2)^theta is at most exp(ln 2) = 2, so this
  // bracket is already admissible up to rounding; grow it if rounding says no.
  double hi = m / std::pow(M_LN2, theta);
  while (!(mean_at(hi) <= 2.0)) hi *= 2;
  double lo = m * 1e-12;
  if (mean_at(lo) <= 2.0) return lo;
  while (hi - lo > 1e-9 * hi) {
    double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    if (mean_at(mid) <= 2.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

AuditReport property_audit(const std::vector<double>& values, double theta) {
  check_theta(theta);
  MomentProfile prof = moment_growth_profile(values, default_orders());
  MomentGrowthFit fit = fit_theta_from_moments(prof);

  AuditReport r;
  r.theta = theta;
  r.K2_hat = std::exp(fit.log_K2_hat);

  double moment_margin = 0;
  double K2_sup = 0;
  for (std::size_t i : retained_order_indices(prof)) {
    double ratio = prof.norms[i] / std::pow(prof.orders[i], theta);
    K2_sup = std::max(K2_sup, ratio);
    moment_margin = std::max(moment_margin, ratio / r.K2_hat);
  }
  r.moment_margin = moment_margin;
  r.moment_ok = moment_margin <= kAuditMomentSlack;
  r.K2_sup = K2_sup;

  ConstantChain chain = chain_from_K2(K2_sup, theta);
  r.K1 = chain.K1;

  // empirical survival against 2 exp(-(x/K1)^(1/theta)) at every sample point
  std::vector<double> a = order_statistics_desc(values);
  std::reverse(a.begin(), a.end());  // ascending
  const double n = static_cast<double>(a.size());
  const double inv_theta = 1.0 / theta;
  double tail_margin = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0 && a[i] == a[i - 1]) continue;
    double surv = (n - static_cast<double>(i)) / n;
    double bound = 2.0 * std::exp(-std::pow(a[i] / r.K1, inv_theta));
    tail_margin = std::max(tail_margin, surv / bound);
  }
  r.tail_margin = tail_margin;
  r.tail_ok = tail_margin <= 1.0;

  r.K4_hat = calibrate_K4(values, theta);
  r.mgf_ok = std::isfinite(r.K4_hat);
  r.chain_K4_over_K4_hat = r.K4_hat > 0 ? chain.K4 / r.K4_hat : 0.0;
  return r;
}

std::string to_json(const AuditReport& r) {
  std::string s = "{";
  s += "\"theta\":" + fmt_double(r.theta);
  s += ",\"K2_hat\":" + fmt_double(r.K2_hat);
  s += ",\"K4_hat\":" + fmt_double(r.K4_hat);
  s += ",\"tail_ok\":";
  s += r.tail_ok ? "true" : "false";
  s += ",\"moment_ok\":";
  s += r.moment_ok ? "true" : "false";
  s += ",\"mgf_ok\":";
  s += r.mgf_ok ? "true" : "false";
  s += ",\"details\":{";
  s += "\"moment_margin\":" + fmt_double(r.moment_margin);
  s += ",\"moment_slack\":" + fmt_double(kAuditMomentSlack);
  s += ",\"tail_margin\":" + fmt_double(r.tail_margin);
  s += ",\"K2_sup\":" + fmt_double(r.K2_sup);
  s += ",\"K1\":" + fmt_double(r.K1);
  s += ",\"chain_K4_over_K4_hat\":" + fmt_double(r.chain_K4_over_K4_hat);
  s += "}}";
  return s;
}

Probability sum_tail_bound(double x, std::size_t n, double theta, double K_theta) {
  check_theta(theta);
  check_K(K_theta);
  if (n == 0) throw DomainError("n must be positive");
  if (!std::isfinite(x)) throw DomainError("x must be finite");
  const double nK = static_cast<double>(n) * K_theta;
  if (x < nK)
    throw OutOfValidityError("sum tail bound requires x >= n * K_theta");
  return Probability(std::exp(-std::pow(x / nK, 1.0 / theta)));
}

double confidence_radius(Probability alpha, std::size_t n, double theta,
                         double K_theta) {
  check_theta(theta);
  check_K(K_theta);
  if (n == 0) throw DomainError("n must be positive");
  const double a = alpha;
  if (a <= 0) throw DomainError("alpha must be positive");
  if (a >= std::exp(-1.0))
    throw OutOfValidityError("confidence radius requires alpha < 1/e");
  return static_cast<double>(n) * K_theta * std::pow(-std::log(a), theta);
}

double boucheron_bound(double x, std::size_t n, double theta, double K_theta) {
  check_theta(theta);
  check_K(K_theta);
  if (n == 0) throw DomainError("n must be positive");
  if (!std::isfinite(x) || x < 0) throw DomainError("x must be finite and non-negative");
  if (theta > 1)
    throw OutOfValidityError("this bound holds only for theta <= 1");
  const double nd = static_cast<double>(n);
  double quad = x * x / nd;
  double poly = std::pow(x, 1.0 / theta) / std::pow(nd, (1.0 - theta) / theta);
  return K_theta * std::exp(-std::min(quad, poly) / K_theta);
}

double K_theta_from_fit(const MomentGrowthFit& fit) {
  if (!std::isfinite(fit.log_K2_hat))
    throw DomainError("fit has non-finite intercept");
  return M_E * std::exp(fit.log_K2_hat);
}

}  // namespace subw
