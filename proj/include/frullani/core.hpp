#pragma once

// The generic Frullani mixing engine: daughter pdf / survival / hazard
// / moments / MGF / sampling for any parent, the slash-distribution
// generalization, and the Frullani identity checker. The mixture is
// parameterized by (b, r) with a = r*b, canonicalized so the
// likelihood surface stays single-valued.

#include <functional>
#include <optional>

#include "frullani/numerics.hpp"
#include "frullani/parents.hpp"

namespace frullani::core {

struct DaughterEval {
    double pdf, cdf, sf, hazard;
};

struct DaughterMoment {
    double moment;
    double cv;  // populated by cv(); NaN otherwise
};

class ScaleMixture {
  public:
    // b > 0, r > 1 after canonicalization (r < 1 inputs are flipped to
    // the equivalent (b*r, 1/r) mixture). When ln(r) < guard_eps the
    // object degenerates to the parent at the geometric-mean scale
    // b*sqrt(r).
    ScaleMixture(parents::ParentFamily parent, double b, double r,
                 double guard_eps = 1e-6);

    const parents::ParentFamily& parent() const { return parent_; }
    double b() const { return b_; }
    double a() const { return b_ * r_; }
    double r() const { return r_; }
    bool degenerate() const { return degenerate_; }

    DaughterEval eval(double t) const;
    double pdf(double t) const;
    double log_pdf(double t) const;
    double sf(double t) const;
    double log_sf(double t) const;
    double cdf(double t) const { return 1.0 - sf(t); }
    double hazard(double t) const;

    // E(T^k) = (b^-k - a^-k) mu_k(1) / (k ln r); +inf if the parent
    // moment does not exist
    double moment(int k) const;
    double cv() const;  // from orders 1 and 2

    double mgf(double s) const;

    double sample(num::RandomStream& stream) const;

    // h_g(t) / h(t|b): tail-theorem diagnostic
    double hazard_tail_ratio(double t) const;

    // log-uniform mixing density 1/(ln(r) u) on (b, a)
    double mixing_density(double u) const;

    // fast survival path registered by closed_forms; takes t, returns sf
    void set_closed_form_sf(std::function<double(double)> sf_fn) {
        closed_sf_ = std::move(sf_fn);
    }
    bool has_closed_form_sf() const { return closed_sf_.has_value(); }
    // always the quadrature route, regardless of registration
    double sf_by_quadrature(double t) const;

  private:
    parents::ParentFamily parent_;
    double b_, r_;
    double guard_eps_;
    bool degenerate_;
    std::optional<parents::ScaledParent> guard_parent_;
    std::optional<std::function<double(double)>> closed_sf_;
};

// General-q slash distribution function
// G(t) = q int_b^a F(ut) u^{q-1} du / (a^q - b^q); tends to the
// daughter cdf as q -> 0.
double slash_cdf(const ScaleMixture& m, double q, double t);

struct IdentityCheck {
    double lhs;  // quadrature of (F(at) - F(bt))/t over (0, inf)
    double rhs;  // ln(a/b) (F(inf) - F(0))
};

IdentityCheck frullani_identity_check(const std::function<double(double)>& cdf,
                                      double a, double b);

}  // namespace frullani::core
