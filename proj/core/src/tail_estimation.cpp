#include "subw/tail_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "subw/errors.hpp"
#include "subw/format.hpp"

namespace subw {

std::vector<double> order_statistics_desc(const std::vector<double>& values) {
  if (values.empty()) throw DomainError("empty sample");
  std::vector<double> a;
  a.reserve(values.size());
  for (double v : values) a.push_back(std::fabs(v));
  std::sort(a.begin(), a.end(), std::greater<double>());
  return a;
}

TailEstimate estimate_theta(const std::vector<double>& values, std::size_t k) {
  const std::size_t n = values.size();
  if (n == 0) throw DomainError("empty sample");
  if (k < 3 || k > n / 2) throw DomainError("k must satisfy 3 <= k <= n/2");
  const std::vector<double> a = order_statistics_desc(values);

  TailEstimate est;
  est.k_used = k;
  est.n = n;
  est.points.reserve(k);
  for (std::size_t i = 1; i <= k; ++i) {
    const double y = a[i - 1];
    if (y == 0.0) {
      ++est.excluded_zeros;
      continue;
    }
    const double x = std::log(std::log(double(n) / double(i)));
    est.points.emplace_back(x, std::log(y));
  }
  if (est.points.size() < 3)
    throw DegenerateSampleError("fewer than 3 positive top order statistics");

  double xm = 0, ym = 0;
  for (const auto& [x, y] : est.points) {
    xm += x;
    ym += y;
  }
  xm /= double(est.points.size());
  ym /= double(est.points.size());
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : est.points) {
    sxx += (x - xm) * (x - xm);
    sxy += (x - xm) * (y - ym);
    syy += (y - ym) * (y - ym);
  }
  est.theta_hat = sxy / sxx;
  est.log_lambda_hat = ym - est.theta_hat * xm;
  est.r_squared = 1.0;
  if (syy > 0.0) {
    double ssres = 0;
    for (const auto& [x, y] : est.points) {
      const double r = y - ym - est.theta_hat * (x - xm);
      ssres += r * r;
    }
    est.r_squared = std::clamp(1.0 - ssres / syy, 0.0, 1.0);
  }
  return est;
}

std::vector<std::pair<double, double>> qq_data(const std::vector<double>& values, std::size_t k) {
  return estimate_theta(values, k).points;
}

std::string to_json(const TailEstimate& e) {
  std::string pts = "[";
  for (std::size_t i = 0; i < e.points.size(); ++i) {
    if (i) pts += ",";
    pts += "[" + fmt_double(e.points[i].first) + "," + fmt_double(e.points[i].second) + "]";
  }
  pts += "]";
  return "{\"theta_hat\":" + fmt_double(e.theta_hat) +
         ",\"log_lambda_hat\":" + fmt_double(e.log_lambda_hat) +
         ",\"k_used\":" + std::to_string(e.k_used) + ",\"n\":" + std::to_string(e.n) +
         ",\"r_squared\":" + fmt_double(e.r_squared) + ",\"points\":" + pts +
         ",\"excluded_zeros\":" + std::to_string(e.excluded_zeros) + "}";
}

std::string qq_csv(const std::vector<std::pair<double, double>>& points) {
  std::string s = "loglog_rank,log_order_stat\n";
  for (const auto& [x, y] : points) s += fmt_double(x) + "," + fmt_double(y) + "\n";
  return s;
}

}  // namespace subw
