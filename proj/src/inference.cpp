#include "frullani/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "frullani/closed_forms.hpp"
#include "frullani/core.hpp"
#include "frullani/specfun.hpp"

namespace frullani::inf {

namespace {

std::optional<closed::DaughterId> daughter_for(parents::Family f) {
    using parents::Family;
    switch (f) {
        case Family::exponential: return closed::DaughterId::f1_exp;
        case Family::weibull: return closed::DaughterId::f1_weibull;
        case Family::gamma: return closed::DaughterId::f1_gamma;
        case Family::loglogistic: return closed::DaughterId::f1_loglogistic;
        case Family::lognormal: return closed::DaughterId::f1_lognormal;
        case Family::pareto: return closed::DaughterId::f1_pareto;
        default: return std::nullopt;
    }
}

core::ScaleMixture make_mixture(parents::Family family, double shape, double b,
                                double r) {
    if (auto id = daughter_for(family))
        return closed::make_named(*id, shape, b, r);
    return core::ScaleMixture(parents::ParentFamily(family, shape), b, r);
}

struct ParamView {
    double shape = 1.0;
    double a = 0.0;  // mixed only
    double b = 0.0;
    std::vector<double> gamma;
    bool has_shape = false;
};

int covariate_count(const ModelSpec& spec,
                    const std::vector<Observation>& data) {
    if (!spec.covariate_link || data.empty()) return 0;
    return static_cast<int>(data.front().covariates.size());
}

ParamView unpack(const ModelSpec& spec, const std::vector<double>& params,
                 int n_cov) {
    ParamView v;
    v.has_shape = parents::family_has_shape(spec.family);
    std::size_t need =
        (v.has_shape ? 1 : 0) + (spec.mixed ? 2 : 1) + n_cov;
    if (params.size() != need)
        throw std::invalid_argument("parameter vector has size " +
                                    std::to_string(params.size()) +
                                    ", expected " + std::to_string(need));
    std::size_t i = 0;
    if (v.has_shape) v.shape = params[i++];
    if (spec.mixed) v.a = params[i++];
    v.b = params[i++];
    v.gamma.assign(params.begin() + i, params.end());
    if (v.has_shape && !(v.shape > 0.0))
        throw std::invalid_argument("shape must be > 0");
    if (!(v.b > 0.0) || (spec.mixed && !(v.a > 0.0)))
        throw std::invalid_argument("scales must be > 0");
    return v;
}

double link_multiplier(const std::vector<double>& gamma,
                       const Observation& obs) {
    if (gamma.empty()) return 1.0;
    if (obs.covariates.size() != gamma.size())
        throw std::invalid_argument("covariate length mismatch");
    double dot = 0.0;
    for (std::size_t k = 0; k < gamma.size(); ++k)
        dot += gamma[k] * obs.covariates[k];
    return std::exp(-dot);
}

[[noreturn]] void bad_term(std::size_t i, const Observation& obs) {
    throw std::runtime_error(
        "neg_log_lik: non-finite contribution at observation " +
        std::to_string(i) + " (t=" + std::to_string(obs.time) + ")");
}

// ---- unconstrained optimizer coordinates ----
// parent: [ln shape?], ln b, gammas
// mixed:  [ln shape?], ln b, ln(r-1), gammas

std::vector<double> natural_from_theta(const ModelSpec& spec,
                                       const std::vector<double>& theta,
                                       int n_cov) {
    const bool hs = parents::family_has_shape(spec.family);
    std::vector<double> p;
    std::size_t i = 0;
    double shape = 1.0;
    if (hs) shape = std::exp(theta[i++]);
    const double b = std::exp(theta[i++]);
    if (hs) p.push_back(shape);
    if (spec.mixed) {
        const double r = 1.0 + std::exp(theta[i++]);
        p.push_back(b * r);  // a
    }
    p.push_back(b);
    for (; i < theta.size(); ++i) p.push_back(theta[i]);
    (void)n_cov;
    return p;
}

std::vector<double> theta_from_natural(const ModelSpec& spec,
                                       const std::vector<double>& params,
                                       int n_cov) {
    const ParamView v = unpack(spec, params, n_cov);
    std::vector<double> theta;
    if (v.has_shape) theta.push_back(std::log(v.shape));
    theta.push_back(std::log(v.b));
    if (spec.mixed) {
        const double r = std::max(v.a / v.b, 1.0 + 1e-8);
        theta.push_back(std::log(r - 1.0));
    }
    for (double g : v.gamma) theta.push_back(g);
    return theta;
}

FitResult assemble(const ModelSpec& spec, const std::vector<double>& params,
                   double nll, double parent_nll, bool converged, int n_cov) {
    FitResult fr;
    fr.names = param_names(spec, n_cov);
    fr.estimates = params;
    fr.neg_log_lik = nll;
    fr.parent_neg_log_lik = parent_nll;
    fr.converged = converged;
    return fr;
}

}  // namespace

std::vector<std::string> param_names(const ModelSpec& spec, int n_covariates) {
    std::vector<std::string> names;
    if (parents::family_has_shape(spec.family)) names.push_back("shape");
    if (spec.mixed) names.push_back("a");
    names.push_back("b");
    for (int k = 0; k < n_covariates; ++k)
        names.push_back("gamma" + std::to_string(k));
    return names;
}

double neg_log_lik(const ModelSpec& spec, const std::vector<double>& params,
                   const std::vector<Observation>& data) {
    const int n_cov = covariate_count(spec, data);
    const ParamView v = unpack(spec, params, n_cov);
    double total = 0.0;

    if (!spec.mixed) {
        const parents::ParentFamily parent(spec.family, v.shape);
        for (std::size_t i = 0; i < data.size(); ++i) {
            const auto& obs = data[i];
            const double u = v.b * link_multiplier(v.gamma, obs);
            const parents::ScaledParent sp(parent, u);
            const double term =
                obs.event ? sp.log_pdf(obs.time) : sp.log_sf(obs.time);
            if (!std::isfinite(term)) bad_term(i, obs);
            total -= term;
        }
        return total;
    }

    const double r = v.a / v.b;
    // without covariates every observation shares one mixture object
    std::optional<core::ScaleMixture> shared;
    if (v.gamma.empty()) shared.emplace(make_mixture(spec.family, v.shape, v.b, r));
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& obs = data[i];
        double term;
        if (shared) {
            term = obs.event ? shared->log_pdf(obs.time)
                             : shared->log_sf(obs.time);
        } else {
            const double m = link_multiplier(v.gamma, obs);
            const core::ScaleMixture mix =
                make_mixture(spec.family, v.shape, v.b * m, r);
            term = obs.event ? mix.log_pdf(obs.time) : mix.log_sf(obs.time);
        }
        if (!std::isfinite(term)) bad_term(i, obs);
        total -= term;
    }
    return total;
}

namespace {

num::OptimResult optimize_theta(const ModelSpec& spec,
                                const std::vector<Observation>& data,
                                const std::vector<double>& theta0, int n_cov) {
    auto objective = [&](const std::vector<double>& theta) {
        try {
            return neg_log_lik(spec, natural_from_theta(spec, theta, n_cov),
                               data);
        } catch (const std::exception&) {
            return 1e100;  // reject the proposal, keep the simplex moving
        }
    };
    return num::minimize(objective, theta0, 1e-9, 40000);
}

// moment-style starting values for the parent fit
std::vector<double> parent_start(const ModelSpec& spec,
                                 const std::vector<Observation>& data,
                                 int n_cov) {
    double sum = 0.0, sum_log = 0.0, sum_log2 = 0.0;
    for (const auto& obs : data) {
        sum += obs.time;
        const double l = std::log(obs.time);
        sum_log += l;
        sum_log2 += l * l;
    }
    const double n = static_cast<double>(data.size());
    const double mean = sum / n;
    std::vector<double> theta;
    if (parents::family_has_shape(spec.family)) {
        double shape0 = 1.0;
        if (spec.family == parents::Family::lognormal) {
            const double var_log =
                std::max(sum_log2 / n - (sum_log / n) * (sum_log / n), 1e-4);
            shape0 = std::sqrt(var_log);
        }
        theta.push_back(std::log(shape0));
    }
    theta.push_back(std::log(1.0 / mean));
    for (int k = 0; k < n_cov; ++k) theta.push_back(0.0);
    return theta;
}

}  // namespace

FitResult fit(const ModelSpec& spec, const std::vector<Observation>& data,
              const std::vector<double>* init) {
    const int n_cov = covariate_count(spec, data);
    const std::size_t n_params = param_names(spec, n_cov).size();
    if (data.size() < std::max<std::size_t>(5, n_params + 1))
        throw std::invalid_argument("fit: need at least " +
                                    std::to_string(std::max<std::size_t>(
                                        5, n_params + 1)) +
                                    " observations");
    for (const auto& obs : data)
        if (!(obs.time > 0.0))
            throw std::invalid_argument("fit: nonpositive time in data");
    const double t0 = data.front().time;
    if (std::all_of(data.begin(), data.end(),
                    [t0](const Observation& o) { return o.time == t0; }))
        throw std::invalid_argument("fit: degenerate data (all times equal)");

    // ---- parent fit ----
    const ModelSpec pspec{spec.family, false, spec.covariate_link};
    FitResult parent_fit;
    if (spec.family == parents::Family::exponential && n_cov == 0) {
        // closed-form censored MLE: rate = events / total time
        double events = 0.0, total = 0.0;
        for (const auto& obs : data) {
            events += obs.event ? 1.0 : 0.0;
            total += obs.time;
        }
        if (!(events > 0.0))
            throw std::invalid_argument("fit: no events in data");
        const std::vector<double> p{events / total};
        parent_fit = assemble(pspec, p, neg_log_lik(pspec, p, data),
                              neg_log_lik(pspec, p, data), true, 0);
    } else {
        const auto theta0 = parent_start(pspec, data, n_cov);
        auto res = optimize_theta(pspec, data, theta0, n_cov);
        const auto p = natural_from_theta(pspec, res.argmin, n_cov);
        parent_fit = assemble(pspec, p, res.min_value, res.min_value,
                              res.converged, n_cov);
    }
    if (!spec.mixed) {
        if (init) {
            auto res = optimize_theta(pspec, data,
                                      theta_from_natural(pspec, *init, n_cov),
                                      n_cov);
            const auto p = natural_from_theta(pspec, res.argmin, n_cov);
            if (res.min_value < parent_fit.neg_log_lik)
                parent_fit = assemble(pspec, p, res.min_value, res.min_value,
                                      res.converged, n_cov);
        }
        return parent_fit;
    }

    // ---- mixture fit, started off the parent MLE ----
    const ParamView pv = unpack(pspec, parent_fit.estimates, n_cov);
    auto mixture_theta = [&](double b_start, double r_start) {
        std::vector<double> theta;
        if (pv.has_shape) theta.push_back(std::log(pv.shape));
        theta.push_back(std::log(b_start));
        theta.push_back(std::log(r_start - 1.0));
        for (double g : pv.gamma) theta.push_back(g);
        return theta;
    };

    std::vector<std::vector<double>> starts;
    if (init) {
        starts.push_back(theta_from_natural(spec, *init, n_cov));
    } else {
        // offset in the ratio direction, geometric mean preserved: the
        // likelihood is flat in r exactly at (b_hat, r=1)
        starts.push_back(mixture_theta(0.9 * pv.b, 1.0 / 0.81));
    }
    num::OptimResult best;
    best.min_value = num::kInf;
    for (const auto& theta0 : starts) {
        auto res = optimize_theta(spec, data, theta0, n_cov);
        if (res.min_value < best.min_value) best = res;
    }
    {
        // wide-ratio restart if the first run collapsed toward r = 1
        auto p = natural_from_theta(spec, best.argmin, n_cov);
        const ParamView bv = unpack(spec, p, n_cov);
        if (bv.a / bv.b < 1.0 + 1e-4) {
            auto res = optimize_theta(
                spec, data, mixture_theta(pv.b / std::sqrt(5.0), 5.0), n_cov);
            if (res.min_value < best.min_value) best = res;
        }
    }

    auto p = natural_from_theta(spec, best.argmin, n_cov);
    double nll = best.min_value;
    bool converged = best.converged;
    if (nll > parent_fit.neg_log_lik) {
        // the mixture nests the parent (r -> 1), so never report worse
        std::vector<double> pp;
        if (pv.has_shape) pp.push_back(pv.shape);
        pp.push_back(pv.b * (1.0 + 5e-7));  // a, inside the degeneracy guard
        pp.push_back(pv.b);
        for (double g : pv.gamma) pp.push_back(g);
        p = pp;
        nll = neg_log_lik(spec, p, data);
        converged = parent_fit.converged;
    }
    return assemble(spec, p, nll, parent_fit.neg_log_lik, converged, n_cov);
}

void infer_errors(FitResult& fit_result, const ModelSpec& spec,
                  const std::vector<Observation>& data) {
    if (!fit_result.converged)
        throw std::invalid_argument("infer_errors: fit did not converge");
    const int n_cov = covariate_count(spec, data);
    const std::size_t np = fit_result.estimates.size();
    const std::size_t n_pos = np - n_cov;  // shape / a / b are positive

    // error coordinates: ln(positive params), raw gammas
    std::vector<double> x0(np);
    for (std::size_t i = 0; i < np; ++i)
        x0[i] = i < n_pos ? std::log(fit_result.estimates[i])
                          : fit_result.estimates[i];
    auto f = [&](const std::vector<double>& x) {
        std::vector<double> p(np);
        for (std::size_t i = 0; i < np; ++i)
            p[i] = i < n_pos ? std::exp(x[i]) : x[i];
        return neg_log_lik(spec, p, data);
    };
    const auto hess = num::fd_hessian(f, x0, 1e-4);
    std::vector<std::vector<double>> cov;
    try {
        cov = num::invert_spd(hess);
    } catch (const std::exception&) {
        throw std::runtime_error(
            "infer_errors: observed information is not positive definite; "
            "consider refitting or profiling the flat parameter");
    }
    fit_result.se_or_cv.resize(np);
    fit_result.reported_as_cv.resize(np);
    fit_result.ci95.resize(np);
    for (std::size_t i = 0; i < np; ++i) {
        const double se = std::sqrt(std::max(cov[i][i], 0.0));
        const double est = fit_result.estimates[i];
        fit_result.se_or_cv[i] = se;
        if (i < n_pos) {
            fit_result.reported_as_cv[i] = true;  // SE(ln theta) ~ CV
            fit_result.ci95[i] = {est * std::exp(-1.96 * se),
                                  est * std::exp(1.96 * se)};
        } else {
            fit_result.reported_as_cv[i] = false;
            fit_result.ci95[i] = {est - 1.96 * se, est + 1.96 * se};
        }
    }
}

namespace {

// fourth-order central difference for f''
double second_derivative(const parents::ParentFamily& parent, double y) {
    const double h = 1e-3 * y;
    auto f = [&](double v) { return parent.pdf(v); };
    return (-f(y + 2 * h) + 16.0 * f(y + h) - 30.0 * f(y) + 16.0 * f(y - h) -
            f(y - 2 * h)) /
           (12.0 * h * h);
}

double fourth_derivative(const parents::ParentFamily& parent, double y) {
    const double h = 1e-2 * y;
    auto f = [&](double v) { return parent.pdf(v); };
    return (f(y - 2 * h) - 4.0 * f(y - h) + 6.0 * f(y) - 4.0 * f(y + h) +
            f(y + 2 * h)) /
           (h * h * h * h);
}

}  // namespace

ScoreTestResult score_test(const std::vector<double>& times,
                           parents::Family family, double shape_init) {
    if (times.size() < 5)
        throw std::invalid_argument("score_test: need at least 5 observations");
    for (double t : times)
        if (!(t > 0.0))
            throw std::invalid_argument("score_test: nonpositive time");
    (void)shape_init;

    std::vector<Observation> data;
    data.reserve(times.size());
    for (double t : times) data.push_back({t, true, {}});
    const ModelSpec pspec{family, false, false};
    const FitResult pf = fit(pspec, data);
    const ParamView pv = unpack(pspec, pf.estimates, 0);
    const parents::ParentFamily parent(family, pv.shape);
    const double chat = pv.b;
    const std::size_t n = times.size();
    const bool has_shape = parents::family_has_shape(family);
    const std::size_t n_nuis = has_shape ? 2 : 1;

    // per-observation pieces in standardized units y = chat * x; the
    // score in delta^2 is sum (y^2 f''(y)/f(y) - 2)/6
    const double hl = 1e-5;
    auto s_of = [&](double y) {
        return (y * y * second_derivative(parent, y) / parent.pdf(y) - 2.0) /
               6.0;
    };
    auto u_of = [&](double y) {
        std::vector<double> u(n_nuis);
        u[0] = 1.0 + (parent.log_pdf(y * (1.0 + hl)) -
                      parent.log_pdf(y * (1.0 - hl))) /
                         (2.0 * hl);
        if (has_shape) {
            const parents::ParentFamily up(family, pv.shape * (1.0 + hl));
            const parents::ParentFamily dn(family, pv.shape * (1.0 - hl));
            u[1] = (up.log_pdf(y) - dn.log_pdf(y)) / (2.0 * hl);
        }
        return u;
    };

    double stat = 0.0, naive_var = 0.0;
    for (double x : times) {
        const double y = chat * x;
        const double fy = parent.pdf(y);
        const double ratio2 = y * y * second_derivative(parent, y) / fy;
        const double ratio4 = y * y * y * y * fourth_derivative(parent, y) / fy;
        stat += (ratio2 - 2.0) / 6.0;
        naive_var += ratio2 * ratio2 / 36.0 - ratio4 / 60.0 + 13.0 / 45.0;
    }

    // Efficient-score variance from expected information under the
    // fitted null: n (E s^2 - E[s u]^T E[u u^T]^{-1} E[s u]), with the
    // expectations as quadratures against the fitted parent density.
    // Sample-sum variance estimates are far too noisy here (s involves
    // fourth powers), and ignoring the estimated nuisance parameters
    // altogether over-states the variance severalfold.
    auto expect = [&](const std::function<double(double)>& h) {
        return num::integrate(
                   [&](double y) {
                       const double fy = parent.pdf(y);
                       return fy > 0.0 ? h(y) * fy : 0.0;
                   },
                   0.0, num::kInf, 1e-9)
            .value;
    };
    const double e_ss = expect([&](double y) {
        const double s = s_of(y);
        return s * s;
    });
    std::vector<double> e_su(n_nuis);
    std::vector<std::vector<double>> e_uu(n_nuis,
                                          std::vector<double>(n_nuis, 0.0));
    for (std::size_t i = 0; i < n_nuis; ++i) {
        e_su[i] = expect([&](double y) { return s_of(y) * u_of(y)[i]; });
        for (std::size_t j = i; j < n_nuis; ++j) {
            e_uu[i][j] = e_uu[j][i] =
                expect([&](double y) {
                    const auto u = u_of(y);
                    return u[i] * u[j];
                });
        }
    }
    double correction = 0.0;
    try {
        const auto cinv = num::invert_spd(e_uu);
        for (std::size_t i = 0; i < n_nuis; ++i)
            for (std::size_t j = 0; j < n_nuis; ++j)
                correction += e_su[i] * cinv[i][j] * e_su[j];
    } catch (const std::exception&) {
        correction = 0.0;
    }
    const double var_eff =
        std::max(static_cast<double>(n) * (e_ss - correction), 1e-12);

    ScoreTestResult res;
    res.statistic = stat;
    res.variance = var_eff;
    res.naive_variance = naive_var;
    res.z = stat / std::sqrt(var_eff);
    res.one_sided_p = sf::std_normal_cdf(-res.z);
    if (family == parents::Family::exponential) {
        // sample-variance-vs-squared-mean form in the same standardized
        // units (y-bar = 1 at the MLE up to roundoff)
        double ybar = 0.0;
        for (double x : times) ybar += chat * x;
        ybar /= static_cast<double>(n);
        double sq = 0.0;
        for (double x : times) {
            const double d = chat * x - ybar;
            sq += d * d;
        }
        res.has_closed_form = true;
        res.closed_form_statistic =
            (sq - static_cast<double>(n) * ybar * ybar) / 6.0;
    }
    return res;
}

std::vector<ComparisonRow> compare_models(const std::vector<Observation>& data,
                                          const std::vector<ModelSpec>& specs) {
    if (specs.size() < 2)
        throw std::invalid_argument("compare_models: need at least 2 families");
    std::vector<ComparisonRow> rows;
    rows.reserve(specs.size());
    for (const auto& spec : specs) {
        ComparisonRow row;
        row.label = (spec.mixed ? "mixed " : "") +
                    parents::family_name(spec.family);
        row.mixed = spec.mixed;
        row.has_shape = parents::family_has_shape(spec.family);
        try {
            const FitResult fr = fit(spec, data);
            const ParamView v =
                unpack(spec, fr.estimates, covariate_count(spec, data));
            row.ok = true;
            row.neg_log_lik = fr.neg_log_lik;
            row.shape = v.shape;
            row.a = spec.mixed ? v.a : 0.0;
            row.b = v.b;
            if (!fr.converged) row.message = "not converged";
        } catch (const std::exception& e) {
            row.ok = false;
            row.message = e.what();
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace frullani::inf
