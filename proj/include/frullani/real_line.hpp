#pragma once

// Whole-real-line families built by reflecting the positive-line
// mixtures about the origin: the symmetric scale-mixed Gaussian, its
// Azzalini-skewed and two-piece variants, the uniform-location-mixed
// normal, and the heavy-tailed Cauchy mixture.

#include "frullani/numerics.hpp"

namespace frullani::realline {

class F1Gaussian {
  public:
    F1Gaussian(double a, double b, double location = 0.0);

    double a() const { return a_; }
    double b() const { return b_; }
    double location() const { return xi_; }

    double pdf(double x) const;
    double cdf(double x) const;

    double variance() const;
    double kurtosis_excess() const;
    double mgf(double s) const;

    double sample(num::RandomStream& stream) const;

  private:
    double a_, b_, xi_;
};

// Solves the closed-form kurtosis relation for the scale ratio a/b.
// Newton started at max(3, guess) with a bisection safeguard: the
// slope vanishes at ratio 1, so an unguarded iteration can diverge.
double kurtosis_to_ratio(double target_kappa);

class SkewF1Gaussian {
  public:
    SkewF1Gaussian(double a, double b, double lambda, double location = 0.0);

    double lambda() const { return lambda_; }
    const F1Gaussian& base() const { return base_; }

    double pdf(double x) const;

    // closed-form moments; the third uses the arctangent-substitution
    // expression, the fourth the symmetric even-moment value
    double mean() const;
    double second_moment() const;
    double third_moment() const;
    double fourth_moment() const;
    double variance() const { double m = mean(); return second_moment() - m * m; }
    double skewness() const;
    double kurtosis_excess() const;

    // sign-flip selection: draw symmetric X, keep X with prob
    // Phi(lambda X), else flip; exact for weight 2*Phi(lambda x)
    double sample(num::RandomStream& stream) const;

  private:
    F1Gaussian base_;
    double lambda_, xi_;
};

class TwoPieceF1Gaussian {
  public:
    // b governs the upper half, c the lower half, a is shared; the mode
    // is a genuine location parameter
    TwoPieceF1Gaussian(double a, double b, double c, double mode = 0.0);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double mode() const { return mode_; }

    // probability mass above the mode
    double weight_above() const;

    double pdf(double x) const;
    double cdf(double x) const;

    // E((X - mode)^n), central at the mode
    double moment_at_mode(int n) const;
    double mean_minus_mode() const;        // closed product form
    double mean() const { return mode_ + mean_minus_mode(); }

    double sample(num::RandomStream& stream) const;

  private:
    double a_, b_, c_, mode_;
};

class UniformLocationNormal {
  public:
    UniformLocationNormal(double half_width, double location = 0.0);

    double half_width() const { return alpha_; }

    double pdf(double x) const;
    double cdf(double x) const;
    double variance() const;          // 1 + alpha^2/3
    double kurtosis_excess() const;   // exact convolution value
    double sample(num::RandomStream& stream) const;

  private:
    double alpha_, xi_;
};

class F1Cauchy {
  public:
    F1Cauchy(double b, double r, double location = 0.0);

    double b() const { return b_; }
    double r() const { return r_; }

    double pdf(double x) const;
    double cdf(double x) const;  // via the inverse-tangent integral
    double sample(num::RandomStream& stream) const;

  private:
    double b_, r_, xi_;
};

}  // namespace frullani::realline
