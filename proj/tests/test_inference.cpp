#include <cmath>
#include <doctest.h>

#include "frullani/closed_forms.hpp"
#include "frullani/inference.hpp"
#include "frullani/numerics.hpp"

using namespace frullani;
using inf::ModelSpec;
using inf::Observation;
using parents::Family;

namespace {

std::vector<Observation> exp_fixture() {
    // three events and one right-censored row
    return {{0.5, true, {}}, {1.2, true, {}}, {3.4, false, {}},
            {0.7, true, {}}, {2.1, true, {}}};
}

std::vector<Observation> draw_mixture(closed::DaughterId id, double shape,
                                      double b, double r, int n,
                                      std::uint64_t seed) {
    const auto m = closed::make_named(id, shape, b, r);
    num::RandomStream rs(seed);
    std::vector<Observation> data;
    data.reserve(n);
    for (int i = 0; i < n; ++i) data.push_back({m.sample(rs), true, {}});
    return data;
}

}  // namespace

TEST_CASE("parameter layout names") {
    CHECK(inf::param_names({Family::exponential, false, false}, 0) ==
          std::vector<std::string>{"b"});
    CHECK(inf::param_names({Family::weibull, true, false}, 0) ==
          std::vector<std::string>{"shape", "a", "b"});
    CHECK(inf::param_names({Family::exponential, false, true}, 2) ==
          std::vector<std::string>{"b", "gamma0", "gamma1"});
}

TEST_CASE("negative log-likelihood matches the hand-computed value") {
    const auto data = exp_fixture();
    const double u = 0.8;
    double expected = 0.0;
    for (const auto& o : data)
        expected += o.event ? (u * o.time - std::log(u)) : u * o.time;
    CHECK(inf::neg_log_lik({Family::exponential, false, false}, {u}, data) ==
          doctest::Approx(expected).epsilon(1e-14));
    CHECK_THROWS(inf::neg_log_lik({Family::exponential, false, false}, {-1.0},
                                  data));
}

TEST_CASE("exponential MLE is events over total time, exactly") {
    const auto data = exp_fixture();
    const auto fr = inf::fit({Family::exponential, false, false}, data);
    double total = 0.0;
    int events = 0;
    for (const auto& o : data) {
        total += o.time;
        events += o.event;
    }
    CHECK(fr.converged);
    CHECK(fr.estimates.size() == 1);
    CHECK(fr.estimates[0] == events / total);  // closed form, bitwise
}

TEST_CASE("dispersion reporting: CV of the exponential rate") {
    // uncensored exponential: CV(rate) = 1/sqrt(n)
    num::RandomStream rs(17);
    std::vector<Observation> data;
    for (int i = 0; i < 400; ++i)
        data.push_back({-std::log(1.0 - rs.uniform()), true, {}});
    const ModelSpec spec{Family::exponential, false, false};
    auto fr = inf::fit(spec, data);
    inf::infer_errors(fr, spec, data);
    CHECK(fr.reported_as_cv[0]);
    CHECK(fr.se_or_cv[0] == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(fr.ci95[0].first < fr.estimates[0]);
    CHECK(fr.ci95[0].second > fr.estimates[0]);
    // multiplicative interval for a positive parameter
    CHECK(fr.ci95[0].first * fr.ci95[0].second ==
          doctest::Approx(fr.estimates[0] * fr.estimates[0]).epsilon(1e-6));
}

TEST_CASE("mixture fit recovers generating parameters within 3 SE") {
    const double shape = 7.0, b = 0.016, r = 66.0;
    const auto data =
        draw_mixture(closed::DaughterId::f1_loglogistic, shape, b, r, 1500, 9);
    const ModelSpec spec{Family::loglogistic, true, false};
    auto fr = inf::fit(spec, data);
    inf::infer_errors(fr, spec, data);
    REQUIRE(fr.converged);
    const std::vector<double> truth = {shape, b * r, b};
    for (std::size_t i = 0; i < truth.size(); ++i) {
        CAPTURE(fr.names[i]);
        // positive parameters: compare on the log scale, SE = CV
        const double z =
            std::log(fr.estimates[i] / truth[i]) / fr.se_or_cv[i];
        CHECK(std::abs(z) < 3.0);
    }
}

TEST_CASE("data from the pure parent does not fool the mixture fit") {
    num::RandomStream rs(23);
    std::vector<Observation> data;
    for (int i = 0; i < 500; ++i)
        data.push_back({-std::log(1.0 - rs.uniform()) / 2.0, true, {}});
    const auto parent_fit =
        inf::fit({Family::exponential, false, false}, data);
    const auto mixed_fit = inf::fit({Family::exponential, true, false}, data);
    CHECK(mixed_fit.neg_log_lik <= parent_fit.neg_log_lik + 1e-6);
    // estimated ratio collapses toward 1
    CHECK(mixed_fit.estimates[0] / mixed_fit.estimates[1] <
          1.05);  // a/b near 1
}

TEST_CASE("covariate link shifts the scale multiplicatively") {
    // exponential with rate b*exp(-gamma z): draw with gamma = 0.8,
    // z in {-1, +1}, independent censoring
    num::RandomStream rs(31);
    const double b = 1.5, gamma = 0.8;
    std::vector<Observation> data;
    for (int i = 0; i < 800; ++i) {
        const double z = (i % 2 == 0) ? 1.0 : -1.0;
        const double rate = b * std::exp(-gamma * z);
        const double t = -std::log(1.0 - rs.uniform()) / rate;
        const double c = -std::log(1.0 - rs.uniform()) / 0.2;  // censoring
        data.push_back({std::min(t, c), t <= c, {z}});
    }
    const ModelSpec spec{Family::exponential, false, true};
    auto fr = inf::fit(spec, data);
    inf::infer_errors(fr, spec, data);
    REQUIRE(fr.converged);
    REQUIRE(fr.names == std::vector<std::string>{"b", "gamma0"});
    CHECK(std::abs(std::log(fr.estimates[0] / b) / fr.se_or_cv[0]) < 3.0);
    CHECK(std::abs(fr.estimates[1] - gamma) / fr.se_or_cv[1] < 3.0);
}

TEST_CASE("score test: closed form tracks the generic path") {
    num::RandomStream rs(41);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<double> x;
        for (int i = 0; i < 150; ++i)
            x.push_back(-std::log(1.0 - rs.uniform()) / 3.0);
        const auto st = inf::score_test(x, Family::exponential);
        REQUIRE(st.has_closed_form);
        CHECK(st.closed_form_statistic * st.statistic >= 0.0);
        CHECK(st.closed_form_statistic ==
              doctest::Approx(st.statistic).epsilon(0.05));
        CHECK(st.variance > 0.0);
        CHECK(st.one_sided_p >= 0.0);
        CHECK(st.one_sided_p <= 1.0);
    }
}

TEST_CASE("score test detects genuine mixing") {
    const auto data =
        draw_mixture(closed::DaughterId::f1_exp, 1.0, 1.0, 5.0, 400, 47);
    std::vector<double> x;
    for (const auto& o : data) x.push_back(o.time);
    const auto st = inf::score_test(x, Family::exponential);
    CHECK(st.z > 2.0);
    CHECK(st.one_sided_p < 0.05);
}

TEST_CASE("model comparison table keeps the parent/mixed pair ordering") {
    const auto data =
        draw_mixture(closed::DaughterId::f1_weibull, 2.0, 0.5, 4.0, 300, 53);
    const std::vector<ModelSpec> specs = {
        {Family::exponential, false, false}, {Family::exponential, true, false},
        {Family::weibull, false, false},     {Family::weibull, true, false},
    };
    const auto rows = inf::compare_models(data, specs);
    REQUIRE(rows.size() == 4);
    CHECK(!rows[0].mixed);
    CHECK(rows[1].mixed);
    for (const auto& row : rows) CHECK(row.ok);
    // a mixture can never fit worse than its own parent
    CHECK(rows[1].neg_log_lik <= rows[0].neg_log_lik + 1e-6);
    CHECK(rows[3].neg_log_lik <= rows[2].neg_log_lik + 1e-6);
}
