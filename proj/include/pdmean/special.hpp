#ifndef PDMEAN_SPECIAL_HPP
#define PDMEAN_SPECIAL_HPP

namespace pdmean {

double log_beta(double a, double b);

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
double incomplete_beta(double x, double a, double b);

double beta_pdf(double x, double a, double b);
double beta_cdf(double x, double a, double b);

// log of the binomial coefficient C(n, k)
double log_choose(int n, int k);

} // namespace pdmean

#endif
