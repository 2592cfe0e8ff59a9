#include "frullani/multivariate.hpp"

#include <cmath>
#include <stdexcept>

#include "frullani/specfun.hpp"

namespace frullani::mv {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950;
constexpr double kHuge = 1e300;
constexpr double kTiny = 1e-300;
}  // namespace

BivariateMixture::BivariateMixture(JointCdf cdf, double b_, double a_,
                                   double d_, double c_)
    : joint_cdf(std::move(cdf)), b(b_), a(a_), d(d_), c(c_) {
    if (!(a > b && b > 0.0 && c > d && d > 0.0))
        throw std::invalid_argument(
            "BivariateMixture: need a > b > 0 and c > d > 0");
}

double biv_pdf(const BivariateMixture& m, double x, double y) {
    if (!(x > 0.0 && y > 0.0))
        throw std::domain_error("biv_pdf: x and y must be > 0");
    const double num = m.joint_cdf(m.a * x, m.c * y) -
                       m.joint_cdf(m.b * x, m.c * y) -
                       m.joint_cdf(m.a * x, m.d * y) +
                       m.joint_cdf(m.b * x, m.d * y);
    return num / (std::log(m.a / m.b) * std::log(m.c / m.d) * x * y);
}

std::pair<double, double> biv_identity_check(const JointCdf& f, double a,
                                             double b, double c, double d) {
    auto inner = [&](double x) {
        const auto q = num::integrate(
            [&](double y) {
                return (f(a * x, c * y) - f(b * x, c * y) - f(a * x, d * y) +
                        f(b * x, d * y)) /
                       y;
            },
            0.0, num::kInf, 1e-9);
        return q.value / x;
    };
    const double lhs = num::integrate(inner, 0.0, num::kInf, 1e-7).value;
    const double rhs =
        std::log(a / b) * std::log(c / d) *
        (f(kHuge, kHuge) - f(kTiny, kHuge) - f(kHuge, kTiny) + f(kTiny, kTiny));
    return {lhs, rhs};
}

JointCdf product_cdf(std::function<double(double)> f1,
                     std::function<double(double)> f2) {
    return [f1 = std::move(f1), f2 = std::move(f2)](double x, double y) {
        return f1(x) * f2(y);
    };
}

JointCdf fgm_cdf(std::function<double(double)> f1,
                 std::function<double(double)> f2, double theta) {
    if (std::abs(theta) > 1.0)
        throw std::invalid_argument("fgm_cdf: |theta| must be <= 1");
    return [f1 = std::move(f1), f2 = std::move(f2), theta](double x, double y) {
        const double u = f1(x), v = f2(y);
        return u * v * (1.0 + theta * (1.0 - u) * (1.0 - v));
    };
}

F1MultivariateNormal::F1MultivariateNormal(std::vector<std::vector<double>> V,
                                           double b, std::vector<double> mean)
    : p_(static_cast<int>(V.size())), b_(b), v_(std::move(V)),
      xi_(std::move(mean)) {
    if (p_ < 1) throw std::invalid_argument("F1MultivariateNormal: empty V");
    if (!(b > 0.0 && b < 1.0))
        throw std::invalid_argument("F1MultivariateNormal: b must be in (0,1)");
    for (const auto& row : v_)
        if (static_cast<int>(row.size()) != p_)
            throw std::invalid_argument("F1MultivariateNormal: V not square");
    if (xi_.empty()) xi_.assign(p_, 0.0);
    if (static_cast<int>(xi_.size()) != p_)
        throw std::invalid_argument("F1MultivariateNormal: mean size mismatch");

    // lower Cholesky; failure means V is not positive definite
    chol_.assign(p_, std::vector<double>(p_, 0.0));
    log_det_v_ = 0.0;
    for (int i = 0; i < p_; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = v_[i][j];
            for (int k = 0; k < j; ++k) s -= chol_[i][k] * chol_[j][k];
            if (i == j) {
                if (!(s > 0.0))
                    throw std::invalid_argument(
                        "F1MultivariateNormal: V is not positive definite");
                chol_[i][i] = std::sqrt(s);
                log_det_v_ += 2.0 * std::log(chol_[i][i]);
            } else {
                chol_[i][j] = s / chol_[j][j];
            }
        }
    }
    vinv_ = num::invert_spd(v_);
}

double F1MultivariateNormal::mahalanobis(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != p_)
        throw std::invalid_argument("mahalanobis: dimension mismatch");
    double q = 0.0;
    for (int i = 0; i < p_; ++i)
        for (int j = 0; j < p_; ++j)
            q += (x[i] - xi_[i]) * vinv_[i][j] * (x[j] - xi_[j]);
    return q;
}

double F1MultivariateNormal::pdf_from_q(double q) const {
    const double lb = std::log(1.0 / b_);
    const double half_p = 0.5 * p_;
    // mixing u^p phi_V(u x) over the log-uniform density and substituting
    // t = u^2 Q/2 gives Gamma(p/2) {P(p/2,Q/2) - P(p/2,b^2 Q/2)} /
    // (2 pi^{p/2} ln(1/b) Q^{p/2} |V|^{1/2}); the leading 1/2 is required
    // for the density to integrate to 1
    const double norm =
        std::exp(sf::lgamma_pos(half_p) - half_p * std::log(kPi) -
                 0.5 * log_det_v_) /
        (2.0 * lb);
    if (q < 1e-4) {
        // two-term series of the chi-square cdf difference removes the
        // 0/0 at the centre
        const double t1 = 0.5 * q;
        const double bp = std::pow(b_, static_cast<double>(p_));
        const double lead = (1.0 - bp) -
                            t1 * half_p / (half_p + 1.0) *
                                (1.0 - bp * b_ * b_);
        return lead /
               (p_ * std::pow(2.0 * kPi, half_p) * lb *
                std::exp(0.5 * log_det_v_));
    }
    if (p_ == 2) {
        return (std::exp(-0.5 * b_ * b_ * q) - std::exp(-0.5 * q)) /
               (2.0 * kPi * lb * std::exp(0.5 * log_det_v_) * q);
    }
    const double diff = sf::reg_inc_gamma(half_p, 0.5 * q).first -
                        sf::reg_inc_gamma(half_p, 0.5 * b_ * b_ * q).first;
    return norm * diff / std::pow(q, half_p);
}

double F1MultivariateNormal::pdf(const std::vector<double>& x) const {
    return pdf_from_q(mahalanobis(x));
}

std::vector<double> F1MultivariateNormal::sample(
    num::RandomStream& stream) const {
    const double u = std::pow(b_, 1.0 - stream.uniform());
    std::vector<double> z(p_);
    for (auto& zi : z) zi = stream.normal();
    std::vector<double> x(p_);
    for (int i = 0; i < p_; ++i) {
        double s = 0.0;
        for (int j = 0; j <= i; ++j) s += chol_[i][j] * z[j];
        x[i] = xi_[i] + s / u;
    }
    return x;
}

double F1MultivariateNormal::moment(int r, int s) const {
    if (r < 0 || s < 0 || r + s < 1)
        throw std::invalid_argument("moment: need r, s >= 0 and r + s >= 1");
    if (p_ < 2 && s > 0)
        throw std::invalid_argument("moment: second index needs p >= 2");
    if ((r + s) % 2 == 1) return 0.0;
    // zero-mean Gaussian cross moments by Stein recursion:
    // mu_{r,s} = (r-1) V11 mu_{r-2,s} + s V12 mu_{r-1,s-1}
    std::vector<std::vector<double>> mu(r + 1, std::vector<double>(s + 1, 0.0));
    const double v11 = v_[0][0];
    const double v12 = p_ >= 2 ? v_[0][1] : 0.0;
    const double v22 = p_ >= 2 ? v_[1][1] : 0.0;
    mu[0][0] = 1.0;
    for (int j = 2; j <= s; ++j) mu[0][j] = (j - 1) * v22 * mu[0][j - 2];
    for (int i = 1; i <= r; ++i)
        for (int j = 0; j <= s; ++j) {
            double val = 0.0;
            if (i >= 2) val += (i - 1) * v11 * mu[i - 2][j];
            if (j >= 1) val += j * v12 * mu[i - 1][j - 1];
            mu[i][j] = val;
        }
    const int k = r + s;
    const double scale = (std::pow(b_, -static_cast<double>(k)) - 1.0) /
                         (k * std::log(1.0 / b_));
    return mu[r][s] * scale;
}

double F1MultivariateNormal::mgf(const std::vector<double>& s) const {
    if (static_cast<int>(s.size()) != p_)
        throw std::invalid_argument("mgf: dimension mismatch");
    double q = 0.0, xs = 0.0;
    for (int i = 0; i < p_; ++i) {
        xs += xi_[i] * s[i];
        for (int j = 0; j < p_; ++j) q += s[i] * v_[i][j] * s[j];
    }
    const double lb = std::log(1.0 / b_);
    if (q < 1e-12)
        return std::exp(xs) * (1.0 + 0.25 * q * (1.0 / (b_ * b_) - 1.0) / lb);
    const double diff = sf::exp_integral_ei(0.5 * q / (b_ * b_)) -
                        sf::exp_integral_ei(0.5 * q);
    return std::exp(xs) * diff / (2.0 * lb);
}

}  // namespace frullani::mv
