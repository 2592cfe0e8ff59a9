#include "frullani/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace frullani::sf {

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209008240;
constexpr double kPi = 3.14159265358979323846264338327950;
constexpr double kPi2Over6 = kPi * kPi / 6.0;
}  // namespace

double std_normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
}

double std_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("std_normal_quantile: p outside (0,1)");
    double lo = -40.0, hi = 40.0, x = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double err = std_normal_cdf(x) - p;
        if (err > 0.0) hi = x; else lo = x;
        const double d = std_normal_pdf(x);
        double next = (d > 0.0) ? x - err / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-14 * (1.0 + std::abs(x))) return next;
        x = next;
    }
    return x;
}

double exp_integral_e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("exp_integral_e1: x must be > 0");
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x + sum (-1)^{n+1} x^n / (n n!)
        double sum = 0.0, term = 1.0;
        for (int n = 1; n <= 60; ++n) {
            term *= -x / n;
            const double add = -term / n;
            sum += add;
            if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
        }
        return -kEulerGamma - std::log(x) + sum;
    }
    // modified Lentz for E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int n = 1; n <= 300; ++n) {
        const double a = -static_cast<double>(n) * n;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

double exp_integral_ei(double x) {
    if (!(x > 0.0)) throw std::domain_error("exp_integral_ei: x must be > 0");
    if (x < 40.0) {
        // Ei(x) = gamma + ln x + sum x^n / (n n!)
        double sum = 0.0, term = 1.0;
        for (int n = 1; n <= 200; ++n) {
            term *= x / n;
            const double add = term / n;
            sum += add;
            if (add < 1e-17 * std::abs(sum)) break;
        }
        return kEulerGamma + std::log(x) + sum;
    }
    // asymptotic e^x/x * sum k!/x^k, truncated at the smallest term
    double sum = 1.0, term = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double next = term * k / x;
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return std::exp(x) / x * sum;
}

double lgamma_pos(double x) { return std::lgamma(x); }

std::pair<double, double> reg_inc_gamma(double beta, double t) {
    if (!(beta > 0.0)) throw std::domain_error("reg_inc_gamma: beta must be > 0");
    if (t < 0.0) throw std::domain_error("reg_inc_gamma: t must be >= 0");
    if (t == 0.0) return {0.0, 1.0};
    if (t < beta + 1.0) {
        // series for P
        double ap = beta, sum = 1.0 / beta, term = sum;
        for (int n = 0; n < 10000; ++n) {
            ap += 1.0;
            term *= t / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        const double p = sum * std::exp(-t + beta * std::log(t) - std::lgamma(beta));
        return {p, 1.0 - p};
    }
    // continued fraction for Q (modified Lentz)
    const double tiny = 1e-300;
    double b = t + 1.0 - beta;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int n = 1; n <= 10000; ++n) {
        const double an = -n * (n - beta);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    const double q = h * std::exp(-t + beta * std::log(t) - std::lgamma(beta));
    return {1.0 - q, q};
}

namespace {

// series sum_{k>=1} z^k / k^2, |z| <= 0.5
double dilog_series(double z) {
    double sum = 0.0, zk = 1.0;
    for (int k = 1; k <= 200; ++k) {
        zk *= z;
        const double add = zk / (static_cast<double>(k) * k);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

}  // namespace

double dilog(double z) {
    if (z > 1.0) throw std::domain_error("dilog: argument > 1 not supported");
    if (z == 1.0) return kPi2Over6;
    if (z == 0.0) return 0.0;
    if (z < -1.0) {
        // Li2(z) = -Li2(1/z) - pi^2/6 - ln^2(-z)/2
        const double lz = std::log(-z);
        return -dilog(1.0 / z) - kPi2Over6 - 0.5 * lz * lz;
    }
    if (z < -0.5) {
        // Landen: Li2(z) = -Li2(z/(z-1)) - ln^2(1-z)/2
        const double l = std::log1p(-z);
        return -dilog(z / (z - 1.0)) - 0.5 * l * l;
    }
    if (z > 0.5) {
        // reflection: Li2(z) + Li2(1-z) = pi^2/6 - ln z ln(1-z)
        return kPi2Over6 - std::log(z) * std::log1p(-z) - dilog(1.0 - z);
    }
    return dilog_series(z);
}

double inv_tan_integral(double x) {
    if (x < 0.0) return -inv_tan_integral(-x);
    if (x == 0.0) return 0.0;
    if (x > 1.0)
        return inv_tan_integral(1.0 / x) + 0.5 * kPi * std::log(x);
    // sum (-1)^k x^{2k+1} / (2k+1)^2; alternating, so the truncation
    // error is below the first dropped term
    double sum = 0.0;
    double xp = x;
    const double x2 = x * x;
    for (long k = 0; k < 3'000'000; ++k) {
        const double denom = static_cast<double>(2 * k + 1);
        const double add = (k % 2 == 0 ? 1.0 : -1.0) * xp / (denom * denom);
        sum += add;
        if (std::abs(add) < 1e-16) break;
        xp *= x2;
    }
    return sum;
}

double gauss_2f1_neg(double alpha, double z, const SpecFunConfig& cfg) {
    if (!(alpha > 0.0)) throw std::domain_error("gauss_2f1_neg: alpha must be > 0");
    if (z > 0.0) throw std::domain_error("gauss_2f1_neg: z must be <= 0");
    if (z == 0.0) return 1.0;
    if (z < -0.5) {
        // Pfaff: 2F1(a,a;a+1;z) = (1-z)^-a 2F1(a,1;a+1;z/(z-1)),
        // with w = z/(z-1) in (1/3, 1): sum alpha/(alpha+n) w^n
        const double w = z / (z - 1.0);
        double sum = 0.0, wn = 1.0;
        bool converged = false;
        for (long n = 0; n < cfg.max_terms; ++n) {
            const double add = alpha / (alpha + n) * wn;
            sum += add;
            if (add < cfg.series_tol * sum) {
                converged = true;
                break;
            }
            wn *= w;
        }
        if (!converged)
            throw std::runtime_error("gauss_2f1_neg: Pfaff series did not converge");
        return std::pow(1.0 - z, -alpha) * sum;
    }
    // direct series on (-1, 0]; term ratio (alpha+n)^2 z / ((alpha+1+n)(n+1))
    double sum = 1.0, term = 1.0;
    bool converged = false;
    for (long n = 0; n < cfg.max_terms; ++n) {
        term *= (alpha + n) * (alpha + n) * z /
                ((alpha + 1.0 + n) * (n + 1.0));
        sum += term;
        if (std::abs(term) < cfg.series_tol * std::abs(sum)) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("gauss_2f1_neg: series did not converge");
    return sum;
}

}  // namespace frullani::sf
