#pragma once

#include <functional>
#include <span>
#include <vector>

namespace probalab::ks {

/// sup_x |F_n(x) - F(x)| for a continuous reference cdf.
double statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Two-sample statistic sup_x |F_n(x) - G_m(x)|.
double statistic_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda);

/// p-value of a one-sample statistic d at sample size n (Stephens' correction).
double p_value(double d, double n);

struct Test {
  double statistic;
  double p_value;
  bool passed;  // p_value > level
};

Test one_sample(std::span<const double> samples, const std::function<double(double)>& cdf, double level = 0.01);

}  // namespace probalab::ks
