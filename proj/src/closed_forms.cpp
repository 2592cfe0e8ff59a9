#include "frullani/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace frullani::closed {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950;
constexpr double kPi2Over6 = kPi * kPi / 6.0;

// log(1 + x^-alpha) given log(x), stable for x near 0
double log1p_pow_neg(double alpha, double log_x) {
    const double e = -alpha * log_x;
    if (e > 700.0) return e;
    return std::log1p(std::exp(e));
}

// Li2(-e^L) with the large-argument branch taken analytically so that
// e^L never overflows
double dilog_neg_exp(double ell) {
    if (ell > 30.0) return -kPi2Over6 - 0.5 * ell * ell + std::exp(-ell);
    return sf::dilog(-std::exp(ell));
}

}  // namespace

double f1_exponential_sf(double b, double r, double t) {
    return (sf::exp_integral_e1(b * t) - sf::exp_integral_e1(r * b * t)) /
           std::log(r);
}

double f1_weibull_sf(double beta, double b, double r, double t) {
    const double x1 = std::pow(b * t, beta);
    const double x2 = std::pow(r * b * t, beta);
    return (sf::exp_integral_e1(x1) - sf::exp_integral_e1(x2)) /
           (beta * std::log(r));
}

double f1_loglogistic_sf(double alpha, double b, double r, double t) {
    const double lt = std::log(b * t);
    const double lrt = std::log(r * b * t);
    return (log1p_pow_neg(alpha, lt) - log1p_pow_neg(alpha, lrt)) /
           (alpha * std::log(r));
}

double f1_lognormal_sf(double b, double r, double t) {
    // cancellation-free regrouping of the elementary-function survival:
    // Gbar = { phi(y1) - phi(y2) + y2 Phibar(y2) - y1 Phibar(y1) } / ln r
    const double y1 = std::log(b * t);
    const double y2 = std::log(r * b * t);
    const double v = sf::std_normal_pdf(y1) - sf::std_normal_pdf(y2) +
                     y2 * sf::std_normal_cdf(-y2) - y1 * sf::std_normal_cdf(-y1);
    return std::min(1.0, std::max(0.0, v / std::log(r)));
}

double f1_pareto_sf(double alpha, double b, double r, double t,
                    bool* used_fallback) {
    const double x1 = b * t;
    const double x2 = r * b * t;
    if (used_fallback) *used_fallback = false;
    if (x1 > 0.05) {
        try {
            const double term1 = std::pow(x1, -alpha) *
                                 sf::gauss_2f1_neg(alpha, -1.0 / x1);
            const double term2 = std::pow(x2, -alpha) *
                                 sf::gauss_2f1_neg(alpha, -1.0 / x2);
            return (term1 - term2) / (alpha * std::log(r));
        } catch (const std::runtime_error&) {
            // fall through to quadrature
        }
    }
    if (used_fallback) *used_fallback = true;
    core::ScaleMixture m(parents::ParentFamily(parents::Family::pareto, alpha),
                         b, r);
    return m.sf_by_quadrature(t);
}

double f1_gamma_pdf(double beta, double b, double r, double t) {
    const double p1 = sf::reg_inc_gamma(beta, b * t).first;
    const double p2 = sf::reg_inc_gamma(beta, r * b * t).first;
    return (p2 - p1) / (std::log(r) * t);
}

double f1_gamma_sf(double beta, double b, double r, double t) {
    const auto q = num::integrate(
        [beta](double x) { return sf::reg_inc_gamma(beta, x).second / x; },
        b * t, r * b * t, 1e-12);
    return std::min(1.0, std::max(0.0, q.value / std::log(r)));
}

double f1_gamma_sf_by_parts(double beta, double b, double r, double t) {
    // single-integral form from integrating Q(beta,x)/x by parts, with
    // the log-density integral kept inside the 1/ln(r) prefactor
    const double x1 = b * t;
    const double x2 = r * b * t;
    const double q1 = sf::reg_inc_gamma(beta, x1).second;
    const double q2 = sf::reg_inc_gamma(beta, x2).second;
    const double lg = sf::lgamma_pos(beta);
    const auto integral = num::integrate(
        [beta, lg](double x) {
            return std::exp((beta - 1.0) * std::log(x) - x - lg) * std::log(x);
        },
        x1, x2, 1e-12);
    return (q2 * std::log(x2) - q1 * std::log(x1) + integral.value) /
           std::log(r);
}

PdfSf f1_pareto_eval(double alpha, double b, double r, double t) {
    const double s1 = std::exp(-alpha * std::log1p(b * t));
    const double s2 = std::exp(-alpha * std::log1p(r * b * t));
    return {(s1 - s2) / (std::log(r) * t), f1_pareto_sf(alpha, b, r, t)};
}

PdfSf f1_lognormal_eval(double b, double r, double t) {
    const double pdf = (sf::std_normal_cdf(std::log(r * b * t)) -
                        sf::std_normal_cdf(std::log(b * t))) /
                       (std::log(r) * t);
    return {pdf, f1_lognormal_sf(b, r, t)};
}

PdfSf f1_gamma_eval(double beta, double b, double r, double t) {
    return {f1_gamma_pdf(beta, b, r, t), f1_gamma_sf(beta, b, r, t)};
}

F2LogLogistic::F2LogLogistic(double alpha, double r1, double r2, double b)
    : alpha_(alpha), r1_(r1), r2_(r2), b_(b) {
    if (!(alpha > 0.0 && b > 0.0))
        throw std::invalid_argument("F2LogLogistic: alpha, b must be > 0");
    if (!(r1 >= 1.0 && r2 >= 1.0))
        throw std::invalid_argument("F2LogLogistic: ratios must be >= 1");
}

double F2LogLogistic::pdf(double t) const { return std::exp(log_pdf(t)); }

double F2LogLogistic::log_pdf(double t) const {
    if (!(t > 0.0)) throw std::domain_error("F2LogLogistic: t must be > 0");
    const double l1 = std::log(r1_), l2 = std::log(r2_);
    if (l1 < 1e-6 || l2 < 1e-6) {
        const double r = std::max(r1_, r2_);
        core::ScaleMixture m(
            parents::ParentFamily(parents::Family::loglogistic, alpha_), b_, r);
        return m.log_pdf(t);
    }
    const double lt = std::log(b_ * t);
    // ln{ (1+tau^-a)(1+(r1 r2 tau)^-a) / [(1+(r1 tau)^-a)(1+(r2 tau)^-a)] }
    const double num = log1p_pow_neg(alpha_, lt) +
                       log1p_pow_neg(alpha_, lt + l1 + l2) -
                       log1p_pow_neg(alpha_, lt + l1) -
                       log1p_pow_neg(alpha_, lt + l2);
    if (num <= 0.0) return -num::kInf;
    return std::log(num) - std::log(alpha_ * l1 * l2 * t);
}

double F2LogLogistic::sf(double t) const {
    if (!(t > 0.0)) throw std::domain_error("F2LogLogistic: t must be > 0");
    const double l1 = std::log(r1_), l2 = std::log(r2_);
    if (l1 < 1e-6 || l2 < 1e-6)
        return f1_loglogistic_sf(alpha_, b_, std::max(r1_, r2_), t);
    const double e0 = -alpha_ * std::log(b_ * t);
    const double v = dilog_neg_exp(e0 - alpha_ * l1) +
                     dilog_neg_exp(e0 - alpha_ * l2) - dilog_neg_exp(e0) -
                     dilog_neg_exp(e0 - alpha_ * (l1 + l2));
    return std::min(1.0, std::max(0.0, v / (alpha_ * alpha_ * l1 * l2)));
}

double F2LogLogistic::log_sf(double t) const {
    const double s = sf(t);
    if (s > 1e-280) return std::log(s);
    // small-argument dilog expansion: sf ~ tau^-a (1-r1^-a)(1-r2^-a) /
    // (a^2 ln r1 ln r2)
    const double l1 = std::log(r1_), l2 = std::log(r2_);
    return -alpha_ * std::log(b_ * t) +
           std::log(-std::expm1(-alpha_ * l1)) +
           std::log(-std::expm1(-alpha_ * l2)) -
           std::log(alpha_ * alpha_ * l1 * l2);
}

double F2LogLogistic::sample(num::RandomStream& stream) const {
    const double u = b_ * std::pow(r1_, stream.uniform()) *
                     std::pow(r2_, stream.uniform());
    return parents::ParentFamily(parents::Family::loglogistic, alpha_)
               .sample(stream) /
           u;
}

DaughterId daughter_from_string(const std::string& name) {
    if (name == "f1-exp") return DaughterId::f1_exp;
    if (name == "f1-weibull") return DaughterId::f1_weibull;
    if (name == "f1-loglogistic") return DaughterId::f1_loglogistic;
    if (name == "f2-loglogistic") return DaughterId::f2_loglogistic;
    if (name == "f1-gamma") return DaughterId::f1_gamma;
    if (name == "f1-lognormal") return DaughterId::f1_lognormal;
    if (name == "f1-pareto") return DaughterId::f1_pareto;
    throw std::invalid_argument("unknown daughter family: " + name);
}

std::vector<std::string> daughter_names() {
    return {"f1-exp",   "f1-weibull",   "f1-loglogistic", "f2-loglogistic",
            "f1-gamma", "f1-lognormal", "f1-pareto"};
}

core::ScaleMixture make_named(DaughterId id, double shape, double b, double r) {
    using parents::Family;
    switch (id) {
        case DaughterId::f1_exp: {
            core::ScaleMixture m(parents::ParentFamily(Family::exponential), b, r);
            if (!m.degenerate())
                m.set_closed_form_sf([b = m.b(), r = m.r()](double t) {
                    return f1_exponential_sf(b, r, t);
                });
            return m;
        }
        case DaughterId::f1_weibull: {
            core::ScaleMixture m(parents::ParentFamily(Family::weibull, shape), b, r);
            if (!m.degenerate())
                m.set_closed_form_sf([shape, b = m.b(), r = m.r()](double t) {
                    return f1_weibull_sf(shape, b, r, t);
                });
            return m;
        }
        case DaughterId::f1_loglogistic: {
            core::ScaleMixture m(parents::ParentFamily(Family::loglogistic, shape),
                                 b, r);
            if (!m.degenerate())
                m.set_closed_form_sf([shape, b = m.b(), r = m.r()](double t) {
                    return f1_loglogistic_sf(shape, b, r, t);
                });
            return m;
        }
        case DaughterId::f1_gamma:
            // sf has no elementary closed form; quadrature is the
            // reference path already wired in core
            return core::ScaleMixture(parents::ParentFamily(Family::gamma, shape),
                                      b, r);
        case DaughterId::f1_lognormal: {
            core::ScaleMixture m(parents::ParentFamily(Family::lognormal, shape),
                                 b, r);
            // sigma != 1 reduces to the unit-sigma daughter through the
            // power transform T -> T^(1/sigma), which maps the log-uniform
            // scale range (b, rb) to (b^(1/sigma), (rb)^(1/sigma))
            if (!m.degenerate())
                m.set_closed_form_sf([shape, b = m.b(), r = m.r()](double t) {
                    const double inv = 1.0 / shape;
                    return f1_lognormal_sf(std::pow(b, inv), std::pow(r, inv),
                                           std::pow(t, inv));
                });
            return m;
        }
        case DaughterId::f1_pareto: {
            core::ScaleMixture m(parents::ParentFamily(Family::pareto, shape), b, r);
            if (!m.degenerate())
                m.set_closed_form_sf([shape, b = m.b(), r = m.r()](double t) {
                    return f1_pareto_sf(shape, b, r, t);
                });
            return m;
        }
        case DaughterId::f2_loglogistic:
            throw std::invalid_argument(
                "f2-loglogistic is not a single scale mixture; use F2LogLogistic");
    }
    throw std::logic_error("make_named: unreachable");
}

}  // namespace frullani::closed
