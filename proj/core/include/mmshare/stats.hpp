#pragma once

#include <span>

namespace mmshare {

double mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs);  // unbiased, needs n >= 2

// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

double student_t_cdf(double t, double dof);

// Inverse CDF of Student's t, p in (0, 1).
double student_t_quantile(double p, double dof);

// Half-width of the two-sided 95% confidence interval for the mean.
double ci95_half_width(std::span<const double> xs);

// t statistic for H0: mean(xs) == 0.
double one_sample_t(std::span<const double> xs);

// Coefficient of determination of the least-squares line y ~ a + b*x.
double r_squared(std::span<const double> x, std::span<const double> y);

}  // namespace mmshare
