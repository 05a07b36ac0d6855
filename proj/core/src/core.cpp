#include "subw/core.hpp"

#include <cmath>

namespace subw {

namespace {

void check_params(double theta, double scale, const char* name) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw DomainError("theta must be positive and finite");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw DomainError(std::string(name) + " must be positive and finite");
}

}  // namespace

TailParams TailParams::from_lambda(double theta, double lambda) {
  check_params(theta, lambda, "lambda");
  return TailParams{theta, lambda, std::pow(lambda, -1.0 / theta)};
}

TailParams TailParams::from_rate(double theta, double b) {
  check_params(theta, b, "b");
  return TailParams{theta, std::pow(b, -theta), b};
}

Probability weibull_survival(double x, const TailParams& p) {
  if (!std::isfinite(x)) throw DomainError("x must be finite");
  if (x < 0.0) throw DomainError("x must be nonnegative");
  return std::exp(-p.rate_b * std::pow(x, 1.0 / p.theta));
}

Probability weibull_cdf(double x, const TailParams& p) {
  if (!std::isfinite(x)) throw DomainError("x must be finite");
  if (x < 0.0) throw DomainError("x must be nonnegative");
  return -std::expm1(-p.rate_b * std::pow(x, 1.0 / p.theta));
}

double weibull_quantile(Probability t, const TailParams& p) {
  double tv = t;
  if (!(tv < 1.0)) throw DomainError("quantile requires t < 1");
  return p.scale_lambda * std::pow(-std::log1p(-tv), p.theta);
}

double log_quantile(Probability t, const TailParams& p) {
  double tv = t;
  if (!(tv > 0.0 && tv < 1.0)) throw DomainError("log_quantile requires 0 < t < 1");
  return p.theta * std::log(-std::log1p(-tv)) + std::log(p.scale_lambda);
}

Probability symmetric_subweibull_survival(double x, double theta, double cut) {
  if (!std::isfinite(x)) throw DomainError("x must be finite");
  if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("theta must be positive");
  if (!(cut > 0.0 && cut < 1.0)) throw DomainError("cut must lie in (0,1)");
  const double L = -std::log1p(-cut);       // log(1/(1-cut))
  const double A = 0.5 * std::exp(L);       // upper-tail coefficient
  const double Lt = std::pow(L, theta);
  // Same inner expression for both signs keeps S(x) + S(-x) = 1 at the bit level.
  const double ax = std::fabs(x);
  const double s = A * std::exp(-std::pow(ax + Lt, 1.0 / theta));
  return x < 0.0 ? 1.0 - s : s;
}

}  // namespace subw
