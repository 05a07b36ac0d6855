#pragma once

#include <cmath>

#include "subw/errors.hpp"

namespace subw {

// Probability value, checked to lie in [0,1].
class Probability {
 public:
  Probability(double v) : v_(v) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("probability outside [0,1]");
  }
  operator double() const { return v_; }
  double value() const { return v_; }

 private:
  double v_;
};

// Tail parameter theta with the scale in both conventions:
// survival exp(-b x^(1/theta)) and quantile lambda (-log(1-t))^theta,
// tied by b = lambda^(-1/theta). Constructing with one determines the other.
struct TailParams {
  double theta;
  double scale_lambda;
  double rate_b;

  static TailParams from_lambda(double theta, double lambda);
  static TailParams from_rate(double theta, double b);
};

Probability weibull_survival(double x, const TailParams& p);
Probability weibull_cdf(double x, const TailParams& p);
double weibull_quantile(Probability t, const TailParams& p);

// log q(t) = theta * log log(1/(1-t)) + log lambda, computed directly from the
// affine form so it stays defined when the quantile itself underflows.
double log_quantile(Probability t, const TailParams& p);

// Survival of the symmetrized sub-Weibull law: continuous, strictly decreasing,
// value 1/2 at zero, upper tail proportional to exp(-x^(1/theta)). `cut` is the
// quantile level at which the two half-formulas are spliced (default 0.95).
Probability symmetric_subweibull_survival(double x, double theta, double cut = 0.95);

}  // namespace subw
