#pragma once

// Special functions backing the closed-form daughter distributions:
// normal cdf, exponential integrals E1/Ei, regularized incomplete
// gamma, dilogarithm, inverse-tangent integral and the one Gauss
// hypergeometric pattern 2F1(a, a; a+1; z<=0) the Pareto survival
// needs. All real-valued; complex branches are out of scope.

#include <utility>

namespace frullani::sf {

struct SpecFunConfig {
    double series_tol = 1e-15;
    long max_terms = 2'000'000;
};

double std_normal_cdf(double x);
double std_normal_pdf(double x);
// Newton on the cdf with bisection safeguard; used for lognormal
// sampling where no closed inverse exists.
double std_normal_quantile(double p);

// E1(x) = int_x^inf e^-t / t dt, x > 0. Series for x <= 1, modified
// Lentz continued fraction beyond.
double exp_integral_e1(double x);
// Ei(x) for x > 0, principal value. Ei(-x) = -E1(x) for x > 0.
double exp_integral_ei(double x);

// (P, Q) with P + Q = 1. P(beta, t) is the gamma cdf with unit scale.
std::pair<double, double> reg_inc_gamma(double beta, double t);

double lgamma_pos(double x);

// Li2(z) = -int_0^z ln(1-u)/u du, restricted to z <= 1.
double dilog(double z);

// Ti2(x) = int_0^x arctan(u)/u du, odd in x.
double inv_tan_integral(double x);

// 2F1(alpha, alpha; alpha+1; z) for z <= 0. Direct series on (-1, 0],
// Pfaff transformation below -1.
double gauss_2f1_neg(double alpha, double z,
                     const SpecFunConfig& cfg = SpecFunConfig{});

}  // namespace frullani::sf
