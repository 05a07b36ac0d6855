#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "subw/sampling.hpp"

namespace subw {

// Empirical moment norms ||X||_k over a grid of orders. n is the sample size
// the norms were computed from; n = 0 marks an exact/analytic profile (no
// reliability cutoff applies).
struct MomentProfile {
  std::vector<double> orders;
  std::vector<double> norms;
  std::size_t n = 0;
};

// OLS fit of log ||X||_k on log k. theta_hat is the growth slope, exp of
// log_K2_hat the fitted level; ratio_min/ratio_max bound ||X||_k / k^theta_hat
// over the fitted orders (the d and D of the asymptotic-equivalence relation).
struct MomentGrowthFit {
  double theta_hat = 0;
  double log_K2_hat = 0;
  double ratio_min = 0;
  double ratio_max = 0;
  double r_squared = 0;
};

// Plug-in estimator ((1/n) sum |Y_i|^k)^(1/k), computed against the sample
// maximum so large orders cannot overflow. Result is always <= max |Y_i|.
double empirical_moment_norm(const std::vector<double>& values, double k);
inline double empirical_moment_norm(const SampleSet& s, double k) {
  return empirical_moment_norm(s.values, k);
}

// Integer default grid k = 1..30.
std::vector<double> default_orders();

MomentProfile moment_growth_profile(const std::vector<double>& values,
                                    const std::vector<double>& orders);
inline MomentProfile moment_growth_profile(const SampleSet& s, const std::vector<double>& orders) {
  return moment_growth_profile(s.values, orders);
}
inline MomentProfile moment_growth_profile(const SampleSet& s) {
  return moment_growth_profile(s.values, default_orders());
}

// Orders the fit retains by default: empirical norms beyond k ~ log(n) are
// dominated by the sample maximum, so they are weighted out (at least the
// first three orders always stay). Exact profiles (n = 0) keep everything.
std::vector<std::size_t> retained_order_indices(const MomentProfile& p);

MomentGrowthFit fit_theta_from_moments(const MomentProfile& p, bool use_all_orders = false);

// Exact absolute moments E|X|^k for the reference laws, in log space so large
// orders stay representable. dist is one of "gaussian" (scale = sigma),
// "exponential" (scale = lambda), "weibull" (scale = lambda, plus theta).
double log_analytic_abs_moment(std::string_view dist, double k, double scale = 1.0,
                               double theta = 1.0);
double analytic_abs_moment(std::string_view dist, double k, double scale = 1.0,
                           double theta = 1.0);

// Profile of analytic norms (E|X|^k)^(1/k) on the given orders, n = 0.
MomentProfile analytic_moment_profile(std::string_view dist, const std::vector<double>& orders,
                                      double scale = 1.0, double theta = 1.0);

std::string to_json(const MomentProfile& p);
std::string to_json(const MomentGrowthFit& f);

}  // namespace subw
