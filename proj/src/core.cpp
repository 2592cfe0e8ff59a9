#include "frullani/core.hpp"

#include <cmath>
#include <stdexcept>

namespace frullani::core {

namespace {

void require_positive(double t) {
    if (!(t > 0.0)) throw std::domain_error("daughter evaluation requires t > 0");
}

// log(1 - e^x) for x < 0
double log1mexp(double x) {
    if (x > -0.6931471805599453) return std::log(-std::expm1(x));
    return std::log1p(-std::exp(x));
}

}  // namespace

ScaleMixture::ScaleMixture(parents::ParentFamily parent, double b, double r,
                           double guard_eps)
    : parent_(parent), b_(b), r_(r), guard_eps_(guard_eps) {
    if (!(b_ > 0.0)) throw std::invalid_argument("ScaleMixture: b must be > 0");
    if (!(r_ > 0.0)) throw std::invalid_argument("ScaleMixture: r must be > 0");
    if (r_ < 1.0) {  // canonicalize a = max, b = min
        b_ *= r_;
        r_ = 1.0 / r_;
    }
    degenerate_ = std::log(r_) < guard_eps_;
    if (degenerate_)
        guard_parent_.emplace(parent_, b_ * std::sqrt(r_));
}

double ScaleMixture::log_pdf(double t) const {
    require_positive(t);
    if (degenerate_) return guard_parent_->log_pdf(t);
    const double ls_b = parent_.log_sf(b_ * t);
    const double ls_a = parent_.log_sf(r_ * b_ * t);
    // Fbar(bt) - Fbar(at) = Fbar(bt) (1 - e^{ls_a - ls_b}), stable for
    // small t where both survivals are near 1
    return ls_b + log1mexp(ls_a - ls_b) - std::log(std::log(r_)) - std::log(t);
}

double ScaleMixture::pdf(double t) const { return std::exp(log_pdf(t)); }

double ScaleMixture::sf_by_quadrature(double t) const {
    require_positive(t);
    if (degenerate_) return guard_parent_->sf(t);
    // Gbar(t) = (ln r)^-1 int_{bt}^{at} Fbar(x)/x dx
    auto integrand = [this](double x) { return parent_.sf(x) / x; };
    const auto q = num::integrate(integrand, b_ * t, r_ * b_ * t, 1e-12);
    return std::min(1.0, std::max(0.0, q.value / std::log(r_)));
}

double ScaleMixture::sf(double t) const {
    if (degenerate_) return guard_parent_->sf(t);
    if (closed_sf_) return (*closed_sf_)(t);
    return sf_by_quadrature(t);
}

double ScaleMixture::log_sf(double t) const {
    if (degenerate_) return guard_parent_->log_sf(t);
    const double s = sf(t);
    if (s > 1e-280) return std::log(s);
    // deep tail: Fbar(at) << Fbar(bt) and the survival integral is
    // dominated by its lower endpoint, so Gbar(t) tracks Fbar(bt) up to
    // a logarithmic correction that is negligible on this scale
    return parent_.log_sf(b_ * t) - std::log(std::log(r_));
}

double ScaleMixture::hazard(double t) const {
    if (degenerate_) {
        const double s = guard_parent_->sf(t);
        return s > 0.0 ? guard_parent_->pdf(t) / s : num::kInf;
    }
    const double s = sf(t);
    if (s <= 0.0) throw std::runtime_error("hazard: survival underflow");
    return pdf(t) / s;
}

DaughterEval ScaleMixture::eval(double t) const {
    const double p = pdf(t);
    const double s = sf(t);
    return DaughterEval{p, 1.0 - s, s, s > 0.0 ? p / s : num::kInf};
}

double ScaleMixture::moment(int k) const {
    if (degenerate_) return guard_parent_->moment(k);
    const double mu = parent_.moment(k);
    if (std::isinf(mu)) return mu;
    const double bk = std::pow(b_, -k);
    const double ak = std::pow(r_ * b_, -k);
    return (bk - ak) * mu / (k * std::log(r_));
}

double ScaleMixture::cv() const {
    const double m1 = moment(1);
    const double m2 = moment(2);
    if (std::isinf(m2)) return num::kInf;
    return std::sqrt(m2 - m1 * m1) / m1;
}

double ScaleMixture::mgf(double s) const {
    if (s == 0.0) return 1.0;
    if (degenerate_) {
        if (parent_.id() == parents::Family::exponential) {
            const double u = guard_parent_->scale();
            if (s >= u) throw std::domain_error("mgf: s outside convergence region");
            return u / (u - s);
        }
    } else if (parent_.id() == parents::Family::exponential) {
        // closed form ln((a-s)/(b-s)) / ln(a/b)
        if (s >= b_) throw std::domain_error("mgf: s must be < b for exponential parent");
        return std::log((r_ * b_ - s) / (b_ - s)) / std::log(r_);
    }
    // generic: integrate e^{st} g(t) directly
    try {
        const auto q = num::integrate(
            [this, s](double t) { return std::exp(s * t) * pdf(t); }, 0.0,
            num::kInf, 1e-10);
        return q.value;
    } catch (const num::QuadratureError&) {
        throw std::domain_error("mgf: integral did not converge (s too large?)");
    }
}

double ScaleMixture::sample(num::RandomStream& stream) const {
    if (degenerate_) return guard_parent_->sample(stream);
    const double x = stream.uniform();
    const double u = b_ * std::pow(r_, x);
    return parents::ScaledParent(parent_, u).sample(stream);
}

double ScaleMixture::hazard_tail_ratio(double t) const {
    require_positive(t);
    if (degenerate_) return 1.0;
    const parents::ScaledParent at_b(parent_, b_);
    // Both the density and the survival of the mixture are proportional
    // to Fbar(bt) deep in the tail, so everything is computed relative
    // to it: the ratio stays well-conditioned long after the absolute
    // survival values have lost all precision (or underflowed).
    const double lsb = parent_.log_sf(b_ * t);
    const double lsa = parent_.log_sf(r_ * b_ * t);
    // g(t) = Fbar(bt) (1 - Fbar(at)/Fbar(bt)) / (t ln r)
    const double lg_rel = std::log1p(-std::exp(lsa - lsb)) -
                          std::log(t * std::log(r_));
    // Gbar(t) = Fbar(bt)/ln r * int exp(ln Fbar(x) - ln Fbar(bt))/x dx
    const auto q = num::integrate(
        [this, lsb](double x) {
            return std::exp(parent_.log_sf(x) - lsb) / x;
        },
        b_ * t, r_ * b_ * t, 1e-13);
    const double lgbar_rel = std::log(q.value) - std::log(std::log(r_));
    const double lh_parent = at_b.log_pdf(t) - at_b.log_sf(t);
    const double lr = (lg_rel - lgbar_rel) - lh_parent;
    if (!std::isfinite(lr))
        throw std::runtime_error("hazard_tail_ratio: hazard underflow");
    return std::exp(lr);
}

double ScaleMixture::mixing_density(double u) const {
    if (u <= b_ || u >= a()) return 0.0;
    return 1.0 / (std::log(r_) * u);
}

double slash_cdf(const ScaleMixture& m, double q, double t) {
    if (!(q > 0.0)) throw std::domain_error("slash_cdf: q must be > 0");
    require_positive(t);
    if (m.degenerate())
        return m.parent().cdf(m.b() * std::sqrt(m.r()) * t);
    const double a = m.a(), b = m.b();
    const auto integral = num::integrate(
        [&m, q, t](double u) {
            return m.parent().cdf(u * t) * std::pow(u, q - 1.0);
        },
        b, a, 1e-12);
    // q/(a^q - b^q) in a form stable as q -> 0
    const double denom = std::exp(q * std::log(b)) * std::expm1(q * std::log(a / b));
    return q * integral.value / denom;
}

IdentityCheck frullani_identity_check(const std::function<double(double)>& cdf,
                                      double a, double b) {
    if (!(a > 0.0 && b > 0.0))
        throw std::invalid_argument("frullani_identity_check: a, b must be > 0");
    const double f_inf = cdf(1e300);
    const double f_zero = cdf(1e-300);
    const double rhs = std::log(a / b) * (f_inf - f_zero);
    if (a == b) return {0.0, rhs};
    const auto q = num::integrate(
        [&cdf, a, b](double t) { return (cdf(a * t) - cdf(b * t)) / t; }, 0.0,
        num::kInf, 1e-9);
    return {q.value, rhs};
}

}  // namespace frullani::core
