#include "frullani/parents.hpp"

#include <cmath>
#include <stdexcept>

#include "frullani/specfun.hpp"

namespace frullani::parents {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950;

void require_positive(double t) {
    if (!(t > 0.0))
        throw std::domain_error("parent evaluation requires t > 0");
}
}  // namespace

Family family_from_string(const std::string& name) {
    if (name == "exp" || name == "exponential") return Family::exponential;
    if (name == "weibull") return Family::weibull;
    if (name == "gamma") return Family::gamma;
    if (name == "loglogistic") return Family::loglogistic;
    if (name == "lognormal") return Family::lognormal;
    if (name == "pareto") return Family::pareto;
    if (name == "halfnormal") return Family::halfnormal;
    if (name == "cauchy") return Family::cauchy;
    throw std::invalid_argument("unknown parent family: " + name);
}

std::string family_name(Family f) {
    switch (f) {
        case Family::exponential: return "exponential";
        case Family::weibull: return "weibull";
        case Family::gamma: return "gamma";
        case Family::loglogistic: return "loglogistic";
        case Family::lognormal: return "lognormal";
        case Family::pareto: return "pareto";
        case Family::halfnormal: return "halfnormal";
        case Family::cauchy: return "cauchy";
    }
    return "?";
}

bool family_has_shape(Family f) {
    return f == Family::weibull || f == Family::gamma ||
           f == Family::loglogistic || f == Family::pareto ||
           f == Family::lognormal;  // log-sd sigma, default 1
}

ParentFamily::ParentFamily(Family id, double shape) : id_(id), shape_(shape) {
    if (family_has_shape(id) && !(shape > 0.0))
        throw std::invalid_argument("parent shape must be > 0");
}

double ParentFamily::log_sf(double t) const {
    require_positive(t);
    switch (id_) {
        case Family::exponential:
            return -t;
        case Family::weibull:
            return -std::pow(t, shape_);
        case Family::gamma:
            return std::log(sf::reg_inc_gamma(shape_, t).second);
        case Family::loglogistic: {
            const double lt = shape_ * std::log(t);
            if (lt > 700.0) return -lt;
            return -std::log1p(std::exp(lt));
        }
        case Family::lognormal:
            return std::log(sf::std_normal_cdf(-std::log(t) / shape_));
        case Family::pareto:
            return -shape_ * std::log1p(t);
        case Family::halfnormal:
            return std::log(std::erfc(t / std::sqrt(2.0)));
        case Family::cauchy:
            return std::log(2.0 / kPi * std::atan(1.0 / t));
    }
    return 0.0;
}

double ParentFamily::sf(double t) const {
    switch (id_) {
        case Family::gamma:
            require_positive(t);
            return sf::reg_inc_gamma(shape_, t).second;
        case Family::lognormal:
            require_positive(t);
            return sf::std_normal_cdf(-std::log(t) / shape_);
        case Family::cauchy:
            require_positive(t);
            return 2.0 / kPi * std::atan(1.0 / t);
        default:
            return std::exp(log_sf(t));
    }
}

double ParentFamily::cdf(double t) const {
    require_positive(t);
    switch (id_) {
        case Family::exponential:
            return -std::expm1(-t);
        case Family::weibull:
            return -std::expm1(-std::pow(t, shape_));
        case Family::gamma:
            return sf::reg_inc_gamma(shape_, t).first;
        case Family::loglogistic: {
            const double x = std::pow(t, -shape_);
            return 1.0 / (1.0 + x);
        }
        case Family::lognormal:
            return sf::std_normal_cdf(std::log(t) / shape_);
        case Family::pareto:
            return -std::expm1(-shape_ * std::log1p(t));
        case Family::halfnormal:
            return 2.0 * sf::std_normal_cdf(t) - 1.0;
        case Family::cauchy:
            return 2.0 / kPi * std::atan(t);
    }
    return 0.0;
}

double ParentFamily::log_pdf(double t) const {
    require_positive(t);
    switch (id_) {
        case Family::exponential:
            return -t;
        case Family::weibull:
            return std::log(shape_) + (shape_ - 1.0) * std::log(t) -
                   std::pow(t, shape_);
        case Family::gamma:
            return (shape_ - 1.0) * std::log(t) - t - sf::lgamma_pos(shape_);
        case Family::loglogistic: {
            const double lt = shape_ * std::log(t);
            double l1p;
            if (lt > 700.0) l1p = lt;
            else l1p = std::log1p(std::exp(lt));
            return std::log(shape_) + (shape_ - 1.0) * std::log(t) - 2.0 * l1p;
        }
        case Family::lognormal: {
            const double y = std::log(t) / shape_;
            return -0.5 * y * y - std::log(shape_) - std::log(t) -
                   0.5 * std::log(2.0 * kPi);
        }
        case Family::pareto:
            return std::log(shape_) - (shape_ + 1.0) * std::log1p(t);
        case Family::halfnormal:
            return std::log(2.0) - 0.5 * t * t - 0.5 * std::log(2.0 * kPi);
        case Family::cauchy:
            return std::log(2.0 / kPi) - std::log1p(t * t);
    }
    return 0.0;
}

double ParentFamily::pdf(double t) const { return std::exp(log_pdf(t)); }

double ParentFamily::hazard(double t) const {
    return std::exp(log_pdf(t) - log_sf(t));
}

double ParentFamily::quantile(double p) const {
    if (!(p >= 0.0 && p < 1.0))
        throw std::domain_error("quantile: p outside [0,1)");
    if (p == 0.0) return 0.0;
    switch (id_) {
        case Family::exponential:
            return -std::log1p(-p);
        case Family::weibull:
            return std::pow(-std::log1p(-p), 1.0 / shape_);
        case Family::loglogistic:
            return std::pow(p / (1.0 - p), 1.0 / shape_);
        case Family::lognormal:
            return std::exp(shape_ * sf::std_normal_quantile(p));
        case Family::pareto:
            return std::expm1(-std::log1p(-p) / shape_);
        case Family::halfnormal:
            return sf::std_normal_quantile(0.5 * (p + 1.0));
        case Family::cauchy:
            return std::tan(0.5 * kPi * p);
        case Family::gamma: {
            // safeguarded Newton on the cdf; Wilson-Hilferty start
            const double g = 1.0 - 2.0 / (9.0 * shape_) +
                             sf::std_normal_quantile(p) *
                                 std::sqrt(2.0 / (9.0 * shape_));
            double x = shape_ * g * g * g;
            if (!(x > 0.0)) x = shape_ * p;
            double lo = 0.0, hi = num::kInf;
            for (int it = 0; it < 200; ++it) {
                const double err = cdf(x) - p;
                if (err > 0.0) hi = x; else lo = x;
                const double d = pdf(x);
                double next = (d > 0.0) ? x - err / d : x;
                if (!(next > lo && next < hi))
                    next = std::isinf(hi) ? 2.0 * x + 1.0 : 0.5 * (lo + hi);
                if (std::abs(next - x) < 1e-13 * (1.0 + x)) return next;
                x = next;
            }
            return x;
        }
    }
    return 0.0;
}

double ParentFamily::moment(int r) const {
    if (r < 1) throw std::invalid_argument("moment order must be >= 1");
    const double rr = static_cast<double>(r);
    switch (id_) {
        case Family::exponential:
            return std::tgamma(rr + 1.0);
        case Family::weibull:
            return std::tgamma(1.0 + rr / shape_);
        case Family::gamma:
            return std::exp(sf::lgamma_pos(shape_ + rr) - sf::lgamma_pos(shape_));
        case Family::loglogistic:
            if (rr >= shape_) return num::kInf;
            return std::tgamma(1.0 + rr / shape_) * std::tgamma(1.0 - rr / shape_);
        case Family::lognormal:
            return std::exp(0.5 * rr * rr * shape_ * shape_);
        case Family::pareto:
            if (rr >= shape_) return num::kInf;
            return std::exp(sf::lgamma_pos(rr + 1.0) + sf::lgamma_pos(shape_ - rr) -
                            sf::lgamma_pos(shape_));
        case Family::halfnormal:
            return std::pow(2.0, 0.5 * rr) * std::tgamma(0.5 * (rr + 1.0)) /
                   std::sqrt(kPi);
        case Family::cauchy:
            return num::kInf;
    }
    return 0.0;
}

double ParentFamily::sample(num::RandomStream& stream) const {
    return quantile(stream.uniform());
}

ScaledParent::ScaledParent(ParentFamily parent, double u)
    : parent_(parent), u_(u) {
    if (!(u > 0.0)) throw std::invalid_argument("scale u must be > 0");
}

ParentEval ScaledParent::eval(double t) const {
    require_positive(t);
    const double p = pdf(t);
    const double c = cdf(t);
    const double s = sf(t);
    return ParentEval{p, c, s, s > 0.0 ? p / s : num::kInf};
}

double ScaledParent::moment(int r) const {
    const double m = parent_.moment(r);
    return std::isinf(m) ? m : m * std::pow(u_, -r);
}

}  // namespace frullani::parents
