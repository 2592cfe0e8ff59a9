#include <cmath>
#include <doctest.h>

#include "frullani/numerics.hpp"

using namespace frullani::num;

TEST_CASE("quadrature on finite, semi-infinite and doubly infinite ranges") {
    auto r = integrate([](double x) { return std::exp(-x); }, 0.0, kInf);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));

    r = integrate([](double x) { return std::exp(-0.5 * x * x); }, -kInf, kInf);
    CHECK(r.value == doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-12));

    // integrable endpoint singularity
    r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));

    r = integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("root finding stays inside the bracket") {
    const double root =
        find_root([](double x) { return std::cos(x); }, 1.0, 2.0);
    CHECK(root == doctest::Approx(M_PI / 2).epsilon(1e-12));

    // steep function whose Newton step would overshoot
    const double r2 = find_root(
        [](double x) { return std::tanh(50.0 * (x - 0.3)); }, 0.0, 1.0);
    CHECK(r2 == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("Nelder-Mead reaches the Rosenbrock minimum") {
    auto rosen = [](const std::vector<double>& x) {
        const double a = 1.0 - x[0], b = x[1] - x[0] * x[0];
        return a * a + 100.0 * b * b;
    };
    const auto res = minimize(rosen, {-1.2, 1.0}, 1e-12, 50000);
    CHECK(res.converged);
    CHECK(res.argmin[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(res.argmin[1] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("finite-difference Hessian of a quadratic recovers the matrix") {
    auto f = [](const std::vector<double>& x) {
        return 2.0 * x[0] * x[0] + 0.5 * x[1] * x[1] + 0.7 * x[0] * x[1];
    };
    const auto h = fd_hessian(f, {0.3, -0.4});
    CHECK(h[0][0] == doctest::Approx(4.0).epsilon(1e-5));
    CHECK(h[1][1] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(h[0][1] == doctest::Approx(0.7).epsilon(1e-4));
    CHECK(h[0][1] == h[1][0]);
}

TEST_CASE("SPD inverse multiplies back to the identity") {
    const std::vector<std::vector<double>> a = {{4.0, 1.0}, {1.0, 3.0}};
    const auto inv = invert_spd(a);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double s = 0.0;
            for (int k = 0; k < 2; ++k) s += a[i][k] * inv[k][j];
            CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
        }
    CHECK_THROWS(invert_spd({{1.0, 2.0}, {2.0, 1.0}}));  // indefinite
}

TEST_CASE("random streams are reproducible and sane") {
    RandomStream a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK(a.uniform() != c.uniform());  // nearby seeds decorrelate

    RandomStream s(7);
    double m = 0.0, m2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double z = s.normal();
        m += z;
        m2 += z * z;
    }
    m /= n;
    m2 /= n;
    CHECK(std::abs(m) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(m2 == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("Monte Carlo moment helper reports mean and standard error") {
    RandomStream s(11);
    const auto mom = mc_moment(
        [&s]() { return -std::log(1.0 - s.uniform()); }, 2, 50000);
    // E T^2 = 2 for a unit exponential
    CHECK(std::abs(mom.estimate - 2.0) < 4.0 * mom.std_error);
    CHECK(mom.std_error > 0.0);
}
