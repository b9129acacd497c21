#pragma once
// Small statistics kit for the Monte-Carlo harnesses: moments, KS tests with
// asymptotic p-values, a chi-square tail, and least-squares power-law fits.

#include <span>

namespace hlab {

struct MeanSE {
    double mean = 0.0;
    double se = 0.0; // sample standard error, sd/sqrt(count)
    std::size_t count = 0;
};

MeanSE mean_se(std::span<const double> xs);

// One-sample KS statistic against Exponential(mean), and the two-sample
// statistic between empirical distributions. Inputs need not be sorted.
double ks_statistic_exponential(std::span<const double> xs, double mean);
double ks_statistic_two_sample(std::span<const double> a, std::span<const double> b);

// Kolmogorov tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda);

// Asymptotic p-value with the small-sample correction factor
// sqrt(n_eff) + 0.12 + 0.11/sqrt(n_eff); use n_eff = n for one sample and
// n*m/(n+m) for two samples.
double ks_pvalue(double d, double n_eff);

// Upper tail of chi-square with dof degrees of freedom, via the regularized
// incomplete gamma function.
double chi_square_sf(double x, double dof);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
};

// Ordinary least squares y = intercept + slope*x; slope_se from residual
// variance (0 when there are only two points).
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// fit_line on (log x, log y); inputs must be positive.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

} // namespace hlab
