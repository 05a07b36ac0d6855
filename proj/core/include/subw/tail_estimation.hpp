#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "subw/sampling.hpp"

namespace subw {

// Order-statistics regression estimate of the tail parameter: OLS slope of
// log Y_(n-i+1,n) on log log(n/i) over the top k absolute order statistics.
// points holds the regression pairs (x, y) in increasing i; indices whose
// order statistic is exactly zero are excluded and counted.
struct TailEstimate {
  double theta_hat = 0;
  double log_lambda_hat = 0;
  std::size_t k_used = 0;
  std::size_t n = 0;
  double r_squared = 0;
  std::vector<std::pair<double, double>> points;
  std::size_t excluded_zeros = 0;
};

// |values| sorted nonincreasing.
std::vector<double> order_statistics_desc(const std::vector<double>& values);
inline std::vector<double> order_statistics_desc(const SampleSet& s) {
  return order_statistics_desc(s.values);
}

TailEstimate estimate_theta(const std::vector<double>& values, std::size_t k);
inline TailEstimate estimate_theta(const SampleSet& s, std::size_t k) {
  return estimate_theta(s.values, k);
}

// The regression points alone (same exclusions as estimate_theta).
std::vector<std::pair<double, double>> qq_data(const std::vector<double>& values, std::size_t k);
inline std::vector<std::pair<double, double>> qq_data(const SampleSet& s, std::size_t k) {
  return qq_data(s.values, k);
}

std::string to_json(const TailEstimate& e);

// Two-column CSV of the regression points, header "loglog_rank,log_order_stat".
std::string qq_csv(const std::vector<std::pair<double, double>>& points);

}  // namespace subw
