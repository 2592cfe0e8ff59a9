#pragma once

// Bivariate scale mixing of an arbitrary joint cdf, the bivariate
// analogue of the log-scale integral identity, and the elliptical
// scale-mixed multivariate normal.

#include <functional>
#include <utility>
#include <vector>

#include "frullani/numerics.hpp"

namespace frullani::mv {

using JointCdf = std::function<double(double, double)>;

// Mixes a joint cdf over independent log-uniform scales: u1 on (b, a)
// for the first coordinate, u2 on (d, c) for the second.
struct BivariateMixture {
    JointCdf joint_cdf;
    double b, a;  // first-coordinate scale range, a > b > 0
    double d, c;  // second-coordinate scale range, c > d > 0

    BivariateMixture(JointCdf cdf, double b_, double a_, double d_, double c_);
};

double biv_pdf(const BivariateMixture& m, double x, double y);

// lhs: double quadrature of the four-term difference quotient over
// (0,inf)^2; rhs: ln(a/b) ln(c/d) times the corner-limit combination.
std::pair<double, double> biv_identity_check(const JointCdf& f, double a,
                                             double b, double c, double d);

// test fixtures: an independence cdf and an FGM-dependent one
JointCdf product_cdf(std::function<double(double)> f1,
                     std::function<double(double)> f2);
JointCdf fgm_cdf(std::function<double(double)> f1,
                 std::function<double(double)> f2, double theta);

// Elliptical family: x = xi + Z/U with Z ~ N(0, V) and U log-uniform
// on (b, 1). The upper scale is pinned at 1; a general range rescales V.
class F1MultivariateNormal {
  public:
    F1MultivariateNormal(std::vector<std::vector<double>> V, double b,
                         std::vector<double> mean = {});

    int dimension() const { return p_; }
    double b() const { return b_; }
    const std::vector<double>& mean() const { return xi_; }

    double mahalanobis(const std::vector<double>& x) const;
    double pdf(const std::vector<double>& x) const;
    double pdf_from_q(double q) const;

    std::vector<double> sample(num::RandomStream& stream) const;

    // E((X1-xi1)^r (X2-xi2)^s) for p >= 2; includes the 1/ln(1/b)
    // normalization the mixing density requires
    double moment(int r, int s) const;

    double mgf(const std::vector<double>& s) const;

  private:
    int p_;
    double b_;
    std::vector<std::vector<double>> v_;      // covariance shape
    std::vector<std::vector<double>> chol_;   // lower Cholesky factor
    std::vector<std::vector<double>> vinv_;
    std::vector<double> xi_;
    double log_det_v_;
};

}  // namespace frullani::mv
