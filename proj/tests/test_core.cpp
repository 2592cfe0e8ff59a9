#include <cmath>
#include <doctest.h>

#include "frullani/core.hpp"
#include "frullani/numerics.hpp"

using namespace frullani;
using core::ScaleMixture;
using parents::Family;
using parents::ParentFamily;

TEST_CASE("mixture pdf integrates to 1 and matches -d sf/dt") {
    const ScaleMixture m(ParentFamily(Family::weibull, 2.0), 0.8, 3.0);
    const auto total =
        num::integrate([&m](double t) { return m.pdf(t); }, 0.0, num::kInf);
    CHECK(total.value == doctest::Approx(1.0).epsilon(1e-9));
    for (double t : {0.3, 1.0, 2.4}) {
        const double h = 1e-6 * t;
        const double der = (m.sf(t - h) - m.sf(t + h)) / (2 * h);
        CHECK(der == doctest::Approx(m.pdf(t)).epsilon(1e-6));
        CHECK(m.cdf(t) == doctest::Approx(1.0 - m.sf(t)).epsilon(1e-13));
        CHECK(m.hazard(t) ==
              doctest::Approx(m.pdf(t) / m.sf(t)).epsilon(1e-12));
    }
}

TEST_CASE("closed moment formula equals direct quadrature") {
    const ScaleMixture m(ParentFamily(Family::exponential), 1.0, 2.0);
    // (b^-1 - a^-1) / ln r for the unit exponential
    CHECK(m.moment(1) == doctest::Approx(0.7213475204444817).epsilon(1e-12));
    for (int k : {1, 2, 3}) {
        const auto q = num::integrate(
            [&m, k](double t) { return std::pow(t, k) * m.pdf(t); }, 0.0,
            num::kInf);
        CHECK(m.moment(k) == doctest::Approx(q.value).epsilon(1e-8));
    }
    CHECK(m.cv() > 0.0);
}

TEST_CASE("mgf matches quadrature inside the convergence strip") {
    const ScaleMixture m(ParentFamily(Family::exponential), 1.0, 2.0);
    CHECK(m.mgf(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    const double s = 0.4;  // < b, so the integral converges
    const auto q = num::integrate(
        [&m, s](double t) { return std::exp(s * t) * m.pdf(t); }, 0.0,
        num::kInf);
    CHECK(m.mgf(s) == doctest::Approx(q.value).epsilon(1e-8));
}

TEST_CASE("ratio below one is canonicalized to the flipped mixture") {
    const ScaleMixture flipped(ParentFamily(Family::exponential), 2.0, 0.5);
    const ScaleMixture canon(ParentFamily(Family::exponential), 1.0, 2.0);
    CHECK(flipped.b() == doctest::Approx(1.0));
    CHECK(flipped.r() == doctest::Approx(2.0));
    CHECK(flipped.sf(1.3) == doctest::Approx(canon.sf(1.3)).epsilon(1e-14));
}

TEST_CASE("near-degenerate ratio falls back to the geometric-mean parent") {
    const ScaleMixture m(ParentFamily(Family::exponential), 2.0, 1.0 + 1e-9);
    CHECK(m.degenerate());
    const double scale = 2.0 * std::sqrt(1.0 + 1e-9);
    CHECK(m.sf(0.7) == doctest::Approx(std::exp(-scale * 0.7)).epsilon(1e-12));
    CHECK(std::isfinite(m.log_pdf(0.7)));
}

TEST_CASE("mixing density is log-uniform on (b, a)") {
    const ScaleMixture m(ParentFamily(Family::exponential), 0.5, 4.0);
    const auto mass = num::integrate(
        [&m](double u) { return m.mixing_density(u); }, m.b(), m.a(), 1e-12);
    CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m.mixing_density(m.b() / 2) == 0.0);
    CHECK(m.mixing_density(m.a() * 2) == 0.0);
    // 1/(ln r * u) inside the support
    CHECK(m.mixing_density(1.0) ==
          doctest::Approx(1.0 / std::log(4.0)).epsilon(1e-13));
}

TEST_CASE("slash distribution function approaches the daughter cdf") {
    const ScaleMixture m(ParentFamily(Family::weibull, 2.0), 1.0, 3.0);
    for (double t : {0.4, 1.1, 2.0}) {
        CHECK(core::slash_cdf(m, 1e-5, t) ==
              doctest::Approx(m.cdf(t)).epsilon(1e-4));
        // monotone in q toward the parent-at-a end
        CHECK(std::isfinite(core::slash_cdf(m, 1.0, t)));
    }
}

TEST_CASE("sampler agrees with the closed first moment") {
    const ScaleMixture m(ParentFamily(Family::gamma, 2.0), 0.7, 2.5);
    num::RandomStream rs(2024);
    const auto mom = num::mc_moment([&]() { return m.sample(rs); }, 1, 50000);
    CHECK(std::abs(mom.estimate - m.moment(1)) < 4.0 * mom.std_error);
}

TEST_CASE("identity checker: lhs equals ln(a/b) for a proper cdf") {
    const auto cdf = [](double t) { return 1.0 - std::exp(-t); };
    const auto chk = core::frullani_identity_check(cdf, 3.0, 0.5);
    CHECK(chk.rhs == doctest::Approx(std::log(6.0)).epsilon(1e-12));
    CHECK(chk.lhs == doctest::Approx(chk.rhs).epsilon(1e-9));
}
