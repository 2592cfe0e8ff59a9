#pragma once

// Named daughter distributions whose survival functions have closed
// forms. Each fast path is registered over the core mixture object and
// is validated against its quadrature route by the tests. All general-b
// forms come from the standard (b = 1) expressions via t -> b t.

#include <string>
#include <utility>
#include <vector>

#include "frullani/core.hpp"
#include "frullani/specfun.hpp"

namespace frullani::closed {

// --- closed-form survival functions (general b) ---
double f1_exponential_sf(double b, double r, double t);
double f1_weibull_sf(double beta, double b, double r, double t);
double f1_loglogistic_sf(double alpha, double b, double r, double t);
double f1_lognormal_sf(double b, double r, double t);
// 2F1 route with quadrature fallback; `used_fallback`, when non-null,
// reports which path produced the value
double f1_pareto_sf(double alpha, double b, double r, double t,
                    bool* used_fallback = nullptr);

struct PdfSf {
    double pdf, sf;
};

double f1_gamma_pdf(double beta, double b, double r, double t);
// reference path: quadrature of Q(beta, x)/x
double f1_gamma_sf(double beta, double b, double r, double t);
// the integrated-by-parts single-integral form, kept as a cross-check
double f1_gamma_sf_by_parts(double beta, double b, double r, double t);

PdfSf f1_pareto_eval(double alpha, double b, double r, double t);
PdfSf f1_lognormal_eval(double b, double r, double t);
PdfSf f1_gamma_eval(double beta, double b, double r, double t);

// Twice-mixed log-logistic: pdf in elementary functions, sf via four
// dilogarithm terms.
class F2LogLogistic {
  public:
    F2LogLogistic(double alpha, double r1, double r2, double b = 1.0);

    double alpha() const { return alpha_; }
    double r1() const { return r1_; }
    double r2() const { return r2_; }
    double b() const { return b_; }

    double pdf(double t) const;
    double log_pdf(double t) const;
    double sf(double t) const;
    double log_sf(double t) const;
    double cdf(double t) const { return 1.0 - sf(t); }
    double sample(num::RandomStream& stream) const;

  private:
    double alpha_, r1_, r2_, b_;
};

// Named-daughter ids used verbatim by the CLI --dist flag.
enum class DaughterId {
    f1_exp,
    f1_weibull,
    f1_loglogistic,
    f2_loglogistic,
    f1_gamma,
    f1_lognormal,
    f1_pareto,
};

DaughterId daughter_from_string(const std::string& name);
std::vector<std::string> daughter_names();

// ScaleMixture with the family's closed-form sf registered (f2 handled
// separately by F2LogLogistic).
core::ScaleMixture make_named(DaughterId id, double shape, double b, double r);

}  // namespace frullani::closed
