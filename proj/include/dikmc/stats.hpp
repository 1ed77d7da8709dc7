#pragma once

#include <functional>
#include <vector>

namespace dikmc {

// One-sample Kolmogorov-Smirnov sup-distance against a CDF:
// max_i max(|i/n - F(x_i)|, |(i-1)/n - F(x_i)|) over the sorted sample.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Two-sample KS sup-distance between empirical CDFs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Critical value coeff * sqrt((m+n)/(m n)) for the two-sample test;
// coeff 1.6276 is the asymptotic 1% point of the Kolmogorov law.
double ks_two_sample_critical(std::size_t m, std::size_t n,
                              double coeff = 1.6276236115189504);

// Pearson chi-square statistic of counts against the uniform multinomial.
double chi_square_uniform(const std::vector<long>& counts);

// Regularized upper incomplete gamma Q(s, x) = Gamma(s,x)/Gamma(s);
// the chi-square upper tail is Q(df/2, x/2).
double gamma_q(double s, double x);

// Chi-square quantile: the x with Q(df/2, x/2) = upper_tail_prob (bisection).
double chi_square_critical(int df, double upper_tail_prob);

// Ordinary least squares of y on x: returns R^2 (0 when x is degenerate).
double r_squared(const std::vector<double>& x, const std::vector<double>& y);

// Pearson correlation coefficient.
double pearson_corr(const std::vector<double>& x, const std::vector<double>& y);

// Quantile with linear interpolation between order statistics (q in [0,1]).
double quantile(std::vector<double> samples, double q);

double median(std::vector<double> samples);

} // namespace dikmc
