#include <cmath>
#include <doctest.h>

#include "frullani/numerics.hpp"
#include "frullani/real_line.hpp"

using namespace frullani;
using namespace frullani::realline;

namespace {

double raw_moment(const std::function<double(double)>& pdf, int k,
                  double tol = 1e-10) {
    return num::integrate(
               [&pdf, k](double x) { return std::pow(x, k) * pdf(x); },
               -num::kInf, num::kInf, tol)
        .value;
}

}  // namespace

TEST_CASE("symmetric scale-mixed Gaussian: center value and moments") {
    const F1Gaussian g(2.0, 1.0);
    // (a - b) / (ln(a/b) sqrt(2 pi))
    CHECK(g.pdf(0.0) ==
          doctest::Approx(1.0 / (std::log(2.0) * std::sqrt(2.0 * M_PI)))
              .epsilon(1e-13));
    CHECK(g.pdf(1e-14) == doctest::Approx(g.pdf(0.0)).epsilon(1e-9));
    const auto total =
        num::integrate([&g](double x) { return g.pdf(x); }, -num::kInf,
                       num::kInf);
    CHECK(total.value == doctest::Approx(1.0).epsilon(1e-9));
    // variance (b^-2 - a^-2)/(2 ln(a/b)) and closed kurtosis
    CHECK(g.variance() ==
          doctest::Approx(0.75 / (2.0 * std::log(2.0))).epsilon(1e-13));
    CHECK(g.variance() ==
          doctest::Approx(raw_moment([&g](double x) { return g.pdf(x); }, 2))
              .epsilon(1e-8));
    const double m4 = raw_moment([&g](double x) { return g.pdf(x); }, 4);
    CHECK(g.kurtosis_excess() ==
          doctest::Approx(m4 / (g.variance() * g.variance()) - 3.0)
              .epsilon(1e-7));
    // cdf: symmetric at 0 and differentiates back to the pdf
    CHECK(g.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    const double h = 1e-6;
    CHECK((g.cdf(0.8 + h) - g.cdf(0.8 - h)) / (2 * h) ==
          doctest::Approx(g.pdf(0.8)).epsilon(1e-6));
    CHECK(g.cdf(-1.2) == doctest::Approx(1.0 - g.cdf(1.2)).epsilon(1e-12));
}

TEST_CASE("MGF second difference reproduces the variance") {
    const F1Gaussian g(2.0, 1.0);
    CHECK(g.mgf(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    const double h = 1e-4;
    const double second = (g.mgf(h) - 2.0 * g.mgf(0.0) + g.mgf(-h)) / (h * h);
    CHECK(second == doctest::Approx(g.variance()).epsilon(1e-5));
}

TEST_CASE("kurtosis-to-ratio inversion round-trips") {
    for (double ratio : {1.5, 2.0, 10.0}) {
        const F1Gaussian g(ratio, 1.0);
        CHECK(kurtosis_to_ratio(g.kurtosis_excess()) ==
              doctest::Approx(ratio).epsilon(1e-10));
    }
}

TEST_CASE("skewed variant: closed moments match quadrature") {
    const SkewF1Gaussian s(2.0, 1.0, 1.0);
    auto pdf = [&s](double x) { return s.pdf(x); };
    CHECK(num::integrate(pdf, -num::kInf, num::kInf).value ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.mean() == doctest::Approx(raw_moment(pdf, 1)).epsilon(1e-8));
    CHECK(s.second_moment() ==
          doctest::Approx(raw_moment(pdf, 2)).epsilon(1e-8));
    CHECK(s.third_moment() ==
          doctest::Approx(raw_moment(pdf, 3)).epsilon(1e-7));
    CHECK(s.fourth_moment() ==
          doctest::Approx(raw_moment(pdf, 4)).epsilon(1e-7));
    CHECK(s.skewness() > 0.0);  // positive slope skews right
    const SkewF1Gaussian neg(2.0, 1.0, -1.0);
    CHECK(neg.skewness() == doctest::Approx(-s.skewness()).epsilon(1e-12));
    // even moments are unaffected by the skewing weight
    CHECK(s.fourth_moment() ==
          doctest::Approx(raw_moment([&neg](double x) { return neg.pdf(x); },
                                     4))
              .epsilon(1e-7));
}

TEST_CASE("two-piece variant: continuity, mass split and moments") {
    const TwoPieceF1Gaussian tp(3.0, 1.0, 2.0, 0.5);
    const double m = tp.mode();
    CHECK(tp.pdf(m + 1e-13) ==
          doctest::Approx(tp.pdf(m - 1e-13)).epsilon(1e-12));
    auto pdf = [&tp](double x) { return tp.pdf(x); };
    CHECK(num::integrate(pdf, -num::kInf, num::kInf).value ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(tp.weight_above() ==
          doctest::Approx(num::integrate(pdf, m, num::kInf).value)
              .epsilon(1e-9));
    CHECK(tp.cdf(m) == doctest::Approx(1.0 - tp.weight_above()).epsilon(1e-10));
    for (int n = 1; n <= 6; ++n) {
        const auto q = num::integrate(
            [&tp, m, n](double x) { return std::pow(x - m, n) * tp.pdf(x); },
            -num::kInf, num::kInf);
        CHECK(tp.moment_at_mode(n) == doctest::Approx(q.value).epsilon(1e-6));
    }
    CHECK(tp.mean_minus_mode() ==
          doctest::Approx(tp.moment_at_mode(1)).epsilon(1e-10));
    CHECK(tp.mean() == doctest::Approx(m + tp.moment_at_mode(1)).epsilon(1e-10));
}

TEST_CASE("uniform-location normal: convolution facts") {
    const UniformLocationNormal u(2.0);
    auto pdf = [&u](double x) { return u.pdf(x); };
    CHECK(num::integrate(pdf, -num::kInf, num::kInf).value ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(u.variance() == doctest::Approx(7.0 / 3.0).epsilon(1e-13));
    CHECK(u.kurtosis_excess() ==
          doctest::Approx(-96.0 / 245.0).epsilon(1e-13));
    const double m2 = raw_moment(pdf, 2), m4 = raw_moment(pdf, 4);
    CHECK(u.kurtosis_excess() ==
          doctest::Approx(m4 / (m2 * m2) - 3.0).epsilon(1e-8));
    const double h = 1e-6;
    CHECK((u.cdf(0.9 + h) - u.cdf(0.9 - h)) / (2 * h) ==
          doctest::Approx(u.pdf(0.9)).epsilon(1e-6));
}

TEST_CASE("Cauchy mixture: center value, symmetry, cdf") {
    const F1Cauchy c(1.0, 2.0);
    // b (r - 1) / (pi ln r)
    CHECK(c.pdf(0.0) ==
          doctest::Approx(1.0 / (M_PI * std::log(2.0))).epsilon(1e-13));
    CHECK(c.pdf(1.4) == doctest::Approx(c.pdf(-1.4)).epsilon(1e-13));
    CHECK(num::integrate([&c](double x) { return c.pdf(x); }, -num::kInf,
                         num::kInf)
              .value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(c.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    const double h = 1e-6;
    CHECK((c.cdf(0.6 + h) - c.cdf(0.6 - h)) / (2 * h) ==
          doctest::Approx(c.pdf(0.6)).epsilon(1e-6));
    CHECK(c.cdf(1e6) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("real-line samplers hit their second moments") {
    num::RandomStream rs(303);
    const F1Gaussian g(2.0, 1.0);
    auto mom = num::mc_moment([&]() { return g.sample(rs); }, 2, 50000);
    CHECK(std::abs(mom.estimate - g.variance()) < 4.0 * mom.std_error);

    const UniformLocationNormal u(2.0);
    mom = num::mc_moment([&]() { return u.sample(rs); }, 2, 50000);
    CHECK(std::abs(mom.estimate - u.variance()) < 4.0 * mom.std_error);
}
