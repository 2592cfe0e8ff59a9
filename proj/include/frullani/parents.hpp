#pragma once

// Unit-scale parent lifetime distributions, plus the rate-like scale
// convention F(t|u) = F(ut): larger u means stochastically smaller
// lifetimes. The half-normal and half-Cauchy live here so the
// real-line families can be built by reflection.

#include <cmath>
#include <string>

#include "frullani/numerics.hpp"

namespace frullani::parents {

enum class Family {
    exponential,
    weibull,      // shape beta
    gamma,        // shape beta
    loglogistic,  // shape alpha
    lognormal,    // shape sigma (log-sd), default 1
    pareto,       // shape alpha (Lomax form, sf = (1+t)^-alpha)
    halfnormal,
    cauchy,       // half-Cauchy
};

Family family_from_string(const std::string& name);
std::string family_name(Family f);
bool family_has_shape(Family f);

class ParentFamily {
  public:
    explicit ParentFamily(Family id, double shape = 1.0);

    Family id() const { return id_; }
    double shape() const { return shape_; }

    // all at unit scale, t > 0
    double pdf(double t) const;
    double log_pdf(double t) const;
    double cdf(double t) const;
    double sf(double t) const;
    double log_sf(double t) const;
    double hazard(double t) const;
    double quantile(double p) const;

    // raw moment E(T^r); +inf when the moment does not exist
    double moment(int r) const;

    // inverse-cdf draw at unit scale
    double sample(num::RandomStream& stream) const;

  private:
    Family id_;
    double shape_;
};

struct ParentEval {
    double pdf, cdf, sf, hazard;
};

class ScaledParent {
  public:
    ScaledParent(ParentFamily parent, double u);

    const ParentFamily& parent() const { return parent_; }
    double scale() const { return u_; }

    ParentEval eval(double t) const;
    double pdf(double t) const { return u_ * parent_.pdf(u_ * t); }
    double log_pdf(double t) const {
        return std::log(u_) + parent_.log_pdf(u_ * t);
    }
    double cdf(double t) const { return parent_.cdf(u_ * t); }
    double sf(double t) const { return parent_.sf(u_ * t); }
    double log_sf(double t) const { return parent_.log_sf(u_ * t); }
    double hazard(double t) const { return u_ * parent_.hazard(u_ * t); }
    double moment(int r) const;  // mu_r(u) = u^-r mu_r(1)
    double sample(num::RandomStream& stream) const {
        return parent_.sample(stream) / u_;
    }

  private:
    ParentFamily parent_;
    double u_;
};

}  // namespace frullani::parents
