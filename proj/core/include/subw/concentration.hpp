#pragma once

#include <string>

#include "subw/core.hpp"
#include "subw/moments.hpp"
#include "subw/sampling.hpp"

namespace subw {

// The explicit constants linking the four equivalent tail characterizations:
// K2 (moment growth) -> K3 = K2 (2e/theta)^theta (MGF of X) ->
// K4 = K3 / (ln 2)^theta (MGF of |X|^(1/theta), minimal admissible) -> K1 = K4
// (two-sided tail bound 2 exp(-(x/K1)^(1/theta))).
struct ConstantChain {
  double K1, K2, K3, K4;
  double theta;
};

ConstantChain chain_from_K2(double K2, double theta);

// Minimal K with (1/n) sum exp((|Y_i|/K)^(1/theta)) <= 2, found by bisection
// to 1e-9 relative. The empirical mean is strictly decreasing in K, so the
// root is unique; the initial upper bracket max|Y| / (ln 2)^theta already
// satisfies the inequality (each term is then at most 2).
double calibrate_K4(const std::vector<double>& values, double theta);
inline double calibrate_K4(const SampleSet& s, double theta) {
  return calibrate_K4(s.values, theta);
}

// Empirical audit of the three checkable characterizations at a claimed theta.
// moment_ok: ||X||_k <= slack * K2_hat * k^theta on the retained grid, with
//   K2_hat = exp(log_K2_hat) from the free moment fit and slack = 2 (the
//   equivalence holds up to constants, so the check is deliberately soft).
// tail_ok: empirical survival <= 2 exp(-(x/K1)^(1/theta)) at every sample
//   point, with K1 chained from the smallest grid-valid moment constant
//   K2_sup = max_k ||X||_k / k^theta (the fitted intercept alone is not a
//   valid Property-2 constant, and chaining it makes bounded laws fail).
// mgf_ok: calibrate_K4 terminates finite.
struct AuditReport {
  double theta = 0;
  double K2_hat = 0;
  double K4_hat = 0;
  bool tail_ok = false;
  bool moment_ok = false;
  bool mgf_ok = false;
  // margins: how close each inequality is to violation (<= 1 passes for
  // tail/moment after dividing by their slack; chain_K4_over_K4_hat is
  // informational)
  double moment_margin = 0;  // max ||X||_k / (K2_hat k^theta), pass iff <= slack
  double tail_margin = 0;    // max S_emp(x) / bound(x), pass iff <= 1
  double chain_K4_over_K4_hat = 0;
  double K2_sup = 0;
  double K1 = 0;
};

inline constexpr double kAuditMomentSlack = 2.0;

AuditReport property_audit(const std::vector<double>& values, double theta);
inline AuditReport property_audit(const SampleSet& s, double theta) {
  return property_audit(s.values, theta);
}

std::string to_json(const AuditReport& r);

// Corollary bound P(S_n >= x) <= exp(-(x/(n K_theta))^(1/theta)), valid for
// x >= n K_theta.
Probability sum_tail_bound(double x, std::size_t n, double theta, double K_theta);

// Radius n K_theta (log(1/alpha))^theta at which the bound equals alpha,
// valid for 0 < alpha < 1/e.
double confidence_radius(Probability alpha, std::size_t n, double theta, double K_theta);

// The sharper sum inequality K exp(-(1/K) min{x^2/n, x^(1/theta)/n^((1-theta)/theta)}),
// valid only for theta <= 1. Not a probability (may exceed 1).
double boucheron_bound(double x, std::size_t n, double theta, double K_theta);

// The Corollary proof's data-driven choice K_theta = e * K2_hat.
double K_theta_from_fit(const MomentGrowthFit& fit);

}  // namespace subw
