#pragma once

#include <cstdint>
#include <utility>

namespace qfin::stats {

// Standard normal CDF via erfc (accurate in both tails).
double normal_cdf(double x);

// Inverse standard normal CDF, Wichura's AS 241 (PPND16), ~1e-15 relative.
double normal_quantile(double p);

// Clopper-Pearson two-sided interval for k successes in n Bernoulli trials at
// the given confidence level.
std::pair<double, double> clopper_pearson(std::uint64_t k, std::uint64_t n,
                                          double confidence);

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

}  // namespace qfin::stats
