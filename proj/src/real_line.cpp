#include "frullani/real_line.hpp"

#include <cmath>
#include <stdexcept>

#include "frullani/specfun.hpp"

namespace frullani::realline {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

double normal_sf(double x) { return sf::std_normal_cdf(-x); }

// (a - b)/ln(a/b), continuous at a = b
double log_mean_weight(double a, double b) {
    const double lr = std::log(a / b);
    if (std::abs(lr) < 1e-9) return std::sqrt(a * b);
    return (a - b) / lr;
}

// reflected scale-mixture pdf (Phi(a y) - Phi(b y)) / (ln(a/b) y) with
// its finite y -> 0 limit
double reflected_pdf(double a, double b, double y) {
    y = std::abs(y);
    const double lr = std::log(a / b);
    if (lr < 1e-9) {
        const double u = std::sqrt(a * b);
        return u * sf::std_normal_pdf(u * y);
    }
    if (y < 1e-12) return (a - b) / (lr * kSqrt2Pi);
    // survival-difference form stays accurate in the far tail
    return (normal_sf(b * y) - normal_sf(a * y)) / (lr * y);
}

// int_{b y}^{a y} (Phi(v) - 1/2)/v dv / ln(a/b): the upper-half mass
// 2(G(y) - 1/2) for y >= 0
double reflected_half_mass(double a, double b, double y) {
    const double lr = std::log(a / b);
    if (lr < 1e-9) {
        const double u = std::sqrt(a * b);
        return sf::std_normal_cdf(u * y) - 0.5;
    }
    if (y <= 0.0) return 0.0;
    const auto q = num::integrate(
        [](double v) {
            if (v < 1e-8) return 1.0 / kSqrt2Pi;
            return (sf::std_normal_cdf(v) - 0.5) / v;
        },
        b * y, a * y, 1e-12);
    return q.value / lr;
}

}  // namespace

F1Gaussian::F1Gaussian(double a, double b, double location)
    : a_(a), b_(b), xi_(location) {
    if (!(b > 0.0 && a > 0.0))
        throw std::invalid_argument("F1Gaussian: scales must be > 0");
    if (a_ < b_) std::swap(a_, b_);
}

double F1Gaussian::pdf(double x) const {
    return reflected_pdf(a_, b_, x - xi_);
}

double F1Gaussian::cdf(double x) const {
    const double y = x - xi_;
    const double half = reflected_half_mass(a_, b_, std::abs(y));
    return y >= 0.0 ? 0.5 + half : 0.5 - half;
}

double F1Gaussian::variance() const {
    const double lr = std::log(a_ / b_);
    if (lr < 1e-9) return 1.0 / (a_ * b_);
    return (1.0 / (b_ * b_) - 1.0 / (a_ * a_)) / (2.0 * lr);
}

double F1Gaussian::kurtosis_excess() const {
    const double rho2 = (a_ / b_) * (a_ / b_);
    const double lr = std::log(a_ / b_);
    if (lr < 1e-9) return 0.0;
    return 3.0 * (rho2 + 1.0) / (rho2 - 1.0) * lr - 3.0;
}

double F1Gaussian::mgf(double s) const {
    if (s == 0.0) return 1.0;
    const double lr = std::log(a_ / b_);
    if (lr < 1e-9) {
        const double sig2 = 1.0 / (a_ * b_);
        return std::exp(xi_ * s + 0.5 * sig2 * s * s);
    }
    const double y1 = s * s / (2.0 * b_ * b_);
    const double y2 = s * s / (2.0 * a_ * a_);
    return std::exp(xi_ * s) * 0.5 / lr *
           (sf::exp_integral_ei(y1) - sf::exp_integral_ei(y2));
}

double F1Gaussian::sample(num::RandomStream& stream) const {
    const double u = b_ * std::pow(a_ / b_, stream.uniform());
    const double z = stream.normal() / u;
    return xi_ + z;  // normal is already symmetric; no explicit sign flip needed
}

double kurtosis_to_ratio(double target_kappa) {
    if (!(target_kappa > 0.0))
        throw std::domain_error("kurtosis_to_ratio: target must be > 0");
    auto kappa = [](double rho) {
        const double r2 = rho * rho;
        return 3.0 * (r2 + 1.0) / (r2 - 1.0) * std::log(rho) - 3.0;
    };
    double lo = 1.0 + 1e-8;
    double hi = std::max(3.0, 2.0);
    while (kappa(hi) < target_kappa) hi *= 2.0;
    // Newton from a point where the slope is healthy
    double x = std::max(3.0, 0.5 * (lo + hi));
    for (int it = 0; it < 200; ++it) {
        const double err = kappa(x) - target_kappa;
        if (err > 0.0) hi = x; else lo = x;
        const double h = 1e-7 * x;
        const double d = (kappa(x + h) - kappa(x - h)) / (2.0 * h);
        double next = (d > 0.0) ? x - err / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-13 * x) return next;
        x = next;
    }
    return x;
}

SkewF1Gaussian::SkewF1Gaussian(double a, double b, double lambda,
                               double location)
    : base_(a, b, 0.0), lambda_(lambda), xi_(location) {}

double SkewF1Gaussian::pdf(double x) const {
    const double y = x - xi_;
    return 2.0 * sf::std_normal_cdf(lambda_ * y) * base_.pdf(y);
}

double SkewF1Gaussian::mean() const {
    const double a = base_.a(), b = base_.b();
    const double lr = std::log(a / b);
    if (lambda_ == 0.0) return xi_;
    const double t1 = std::sqrt(1.0 + (lambda_ / b) * (lambda_ / b));
    const double t2 = std::sqrt(1.0 + (lambda_ / a) * (lambda_ / a));
    return xi_ + 2.0 * (t1 - t2) / (kSqrt2Pi * lr * lambda_);
}

double SkewF1Gaussian::second_moment() const {
    // skewing by 2*Phi(lambda x) leaves even moments untouched
    const double m = mean() - xi_;
    return base_.variance() + 0.0 * m;  // base is centred, E X^2 = var
}

double SkewF1Gaussian::third_moment() const {
    const double a = base_.a(), b = base_.b();
    const double lr = std::log(a / b);
    if (lambda_ == 0.0) return 0.0;
    const double qb = (lambda_ / b) * (lambda_ / b);
    const double qa = (lambda_ / a) * (lambda_ / a);
    const double bracket = (2.0 / 3.0) * std::pow(1.0 + qb, 1.5) -
                           (2.0 / 3.0) * std::pow(1.0 + qa, 1.5) +
                           qa / std::sqrt(1.0 + qa) - qb / std::sqrt(1.0 + qb);
    return 2.0 * bracket / (kSqrt2Pi * lr * lambda_ * lambda_ * lambda_);
}

double SkewF1Gaussian::fourth_moment() const {
    const double a = base_.a(), b = base_.b();
    const double lr = std::log(a / b);
    // symmetric fourth moment 3(b^-4 - a^-4)/(4 ln(a/b))
    return 3.0 * (std::pow(b, -4.0) - std::pow(a, -4.0)) / (4.0 * lr);
}

double SkewF1Gaussian::skewness() const {
    const double m = mean() - xi_;
    const double m2 = second_moment();
    const double m3 = third_moment();
    const double var = m2 - m * m;
    return (m3 - 3.0 * m * m2 + 2.0 * m * m * m) / std::pow(var, 1.5);
}

double SkewF1Gaussian::kurtosis_excess() const {
    const double m = mean() - xi_;
    const double m2 = second_moment();
    const double m3 = third_moment();
    const double m4 = fourth_moment();
    const double var = m2 - m * m;
    const double c4 = m4 - 4.0 * m * m3 + 6.0 * m * m * m2 - 3.0 * std::pow(m, 4.0);
    return c4 / (var * var) - 3.0;
}

double SkewF1Gaussian::sample(num::RandomStream& stream) const {
    const double x = base_.sample(stream);
    const double keep = sf::std_normal_cdf(lambda_ * x);
    return xi_ + (stream.uniform() < keep ? x : -x);
}

TwoPieceF1Gaussian::TwoPieceF1Gaussian(double a, double b, double c,
                                       double mode)
    : a_(a), b_(b), c_(c), mode_(mode) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0))
        throw std::invalid_argument("TwoPieceF1Gaussian: scales must be > 0");
    if (!(b <= a && c <= a))
        throw std::invalid_argument("TwoPieceF1Gaussian: need b <= a and c <= a");
}

double TwoPieceF1Gaussian::weight_above() const {
    const double wb = log_mean_weight(a_, b_);
    const double wc = log_mean_weight(a_, c_);
    return wc / (wb + wc);
}

double TwoPieceF1Gaussian::pdf(double x) const {
    const double y = x - mode_;
    const double s = weight_above();
    if (y >= 0.0) return 2.0 * s * reflected_pdf(a_, b_, y);
    return 2.0 * (1.0 - s) * reflected_pdf(a_, c_, y);
}

double TwoPieceF1Gaussian::cdf(double x) const {
    const double y = x - mode_;
    const double s = weight_above();
    if (y >= 0.0) return (1.0 - s) + 2.0 * s * reflected_half_mass(a_, b_, y);
    return (1.0 - s) - 2.0 * (1.0 - s) * reflected_half_mass(a_, c_, -y);
}

double TwoPieceF1Gaussian::moment_at_mode(int n) const {
    if (n < 1) throw std::invalid_argument("moment_at_mode: order must be >= 1");
    const double s = weight_above();
    const double lb = std::log(a_ / b_);
    const double lc = std::log(a_ / c_);
    auto half_term = [this, n](double lower, double lr) {
        // (lower^-n - a^-n)/ln(a/lower), continuous in the equal-scale limit
        if (lr < 1e-9)
            return static_cast<double>(n) * std::pow(lower, -static_cast<double>(n));
        return (std::pow(lower, -static_cast<double>(n)) -
                std::pow(a_, -static_cast<double>(n))) / lr;
    };
    if (n % 2 == 0) {
        const int half = n / 2;
        double dfact = 1.0;  // (n-1)!!
        for (int k = n - 1; k >= 1; k -= 2) dfact *= k;
        return dfact / n *
               (s * half_term(b_, lb) + (1.0 - s) * half_term(c_, lc));
    }
    const int m = (n - 1) / 2;  // n = 2m + 1
    double fact = 1.0;
    for (int k = 2; k <= m; ++k) fact *= k;
    const double coef = std::pow(2.0, m + 1.0) * fact / (kSqrt2Pi * n);
    return coef * (s * half_term(b_, lb) - (1.0 - s) * half_term(c_, lc));
}

double TwoPieceF1Gaussian::mean_minus_mode() const {
    const double num = std::sqrt(2.0) * (a_ - b_) * (a_ - c_) * (c_ - b_);
    const double den = std::sqrt(kPi) * a_ * b_ * c_ *
                       ((a_ - b_) * std::log(a_ / c_) +
                        (a_ - c_) * std::log(a_ / b_));
    if (den == 0.0) return 0.0;  // symmetric or degenerate
    return num / den;
}

double TwoPieceF1Gaussian::sample(num::RandomStream& stream) const {
    const double s = weight_above();
    const bool upper = stream.uniform() < s;
    const double lower_scale = upper ? b_ : c_;
    const double u = lower_scale * std::pow(a_ / lower_scale, stream.uniform());
    const double mag = std::abs(stream.normal()) / u;
    return mode_ + (upper ? mag : -mag);
}

UniformLocationNormal::UniformLocationNormal(double half_width, double location)
    : alpha_(half_width), xi_(location) {
    if (!(half_width > 0.0))
        throw std::invalid_argument("UniformLocationNormal: half_width must be > 0");
}

double UniformLocationNormal::pdf(double x) const {
    const double y = x - xi_;
    return (sf::std_normal_cdf(y + alpha_) - sf::std_normal_cdf(y - alpha_)) /
           (2.0 * alpha_);
}

double UniformLocationNormal::cdf(double x) const {
    // int Phi = x Phi(x) + phi(x)
    const double y = x - xi_;
    auto iphi = [](double v) {
        return v * sf::std_normal_cdf(v) + sf::std_normal_pdf(v);
    };
    return (iphi(y + alpha_) - iphi(y - alpha_)) / (2.0 * alpha_);
}

double UniformLocationNormal::variance() const {
    return 1.0 + alpha_ * alpha_ / 3.0;
}

double UniformLocationNormal::kurtosis_excess() const {
    // normal + uniform convolution: mu4 = 3 + 2 a^2 + a^4/5
    const double a2 = alpha_ * alpha_;
    return -6.0 * a2 * a2 / (5.0 * (3.0 + a2) * (3.0 + a2));
}

double UniformLocationNormal::sample(num::RandomStream& stream) const {
    return xi_ + stream.normal() + alpha_ * (2.0 * stream.uniform() - 1.0);
}

F1Cauchy::F1Cauchy(double b, double r, double location)
    : b_(b), r_(r), xi_(location) {
    if (!(b > 0.0)) throw std::invalid_argument("F1Cauchy: b must be > 0");
    if (r_ < 1.0) {
        b_ *= r_;
        r_ = 1.0 / r_;
    }
}

double F1Cauchy::pdf(double x) const {
    const double y = std::abs(x - xi_);
    const double lr = std::log(r_);
    if (lr < 1e-9) {
        const double u = b_ * std::sqrt(r_);
        return u / (kPi * (1.0 + u * y * u * y));
    }
    if (y < 1e-12) return b_ * (r_ - 1.0) / (kPi * lr);
    // single-arctan form avoids cancellation of the two arctangents
    const double z = b_ * (r_ - 1.0) * y / (1.0 + r_ * b_ * b_ * y * y);
    return std::atan(z) / (kPi * lr * y);
}

double F1Cauchy::cdf(double x) const {
    const double y = x - xi_;
    const double lr = std::log(r_);
    if (lr < 1e-9) {
        const double u = b_ * std::sqrt(r_);
        return 0.5 + std::atan(u * y) / kPi;
    }
    const double ay = std::abs(y);
    const double half = (sf::inv_tan_integral(r_ * b_ * ay) -
                         sf::inv_tan_integral(b_ * ay)) / (kPi * lr);
    return y >= 0.0 ? 0.5 + half : 0.5 - half;
}

double F1Cauchy::sample(num::RandomStream& stream) const {
    const double u = b_ * std::pow(r_, stream.uniform());
    const double mag = std::tan(0.5 * kPi * stream.uniform()) / u;
    return xi_ + (stream.uniform() < 0.5 ? mag : -mag);
}

}  // namespace frullani::realline
