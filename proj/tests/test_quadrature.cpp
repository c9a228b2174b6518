//---------------------------------------------------------------------------//
//! \file test_quadrature.cpp
//---------------------------------------------------------------------------//
#include "decoh/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>
#include <doctest.h>

using namespace decoh;
using std::numbers::pi;

TEST_CASE("finite interval")
{
    auto r = integrate([](double x) { return x * x * x * x * x; }, 0, 1, {});
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 6).epsilon(1e-14));

    // Kink at a breakpoint
    std::vector<double> bps{-1, 0.3, 2};
    auto k = integrate([](double x) { return std::abs(x - 0.3); }, bps, {});
    CHECK(k.value == doctest::Approx(0.5 * 1.3 * 1.3 + 0.5 * 1.7 * 1.7));

    // Integrable endpoint singularity needs many bisections
    QuadratureSpec spec;
    spec.max_subdivisions = 500;
    auto s = integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1, spec);
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("random polynomials are integrated exactly")
{
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> coef(-1, 1);
    for (int trial = 0; trial < 20; ++trial)
    {
        std::vector<double> c(11);
        for (auto& v : c)
            v = coef(rng);
        auto poly = [&c](double x) {
            double sum = 0;
            for (auto it = c.rbegin(); it != c.rend(); ++it)
                sum = sum * x + *it;
            return sum;
        };
        double exact = 0;
        for (std::size_t n = 0; n < c.size(); ++n)
            exact += c[n] * (std::pow(2.0, n + 1) - std::pow(-1.0, n + 1))
                     / (n + 1);
        auto r = integrate(poly, -1, 2, {});
        CHECK(r.value == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("semi-infinite")
{
    QuadratureSpec spec;
    auto e = integrate_semi_infinite([](double x) { return std::exp(-x); },
                                     spec);
    CHECK(e.converged);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));

    spec.decay_scale = 0.1;
    auto g = integrate_semi_infinite(
        [](double x) { return std::exp(-100 * x * x); }, spec, 0);
    CHECK(g.value == doctest::Approx(std::sqrt(pi) / 20).epsilon(1e-11));

    spec.decay_scale = 1;
    auto shifted = integrate_semi_infinite(
        [](double x) { return std::exp(-(x - 3)); }, spec, 3);
    CHECK(shifted.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Fourier transforms")
{
    QuadratureSpec spec;
    for (double w : {0.0, 0.3, 2.0, 17.0, 150.0})
    {
        CAPTURE(w);
        auto s = integrate_fourier_sine(
            [](double x) { return x * std::exp(-x); }, w, spec);
        double const d = 1 + w * w;
        CHECK(s.converged);
        CHECK(s.value == doctest::Approx(2 * w / (d * d)).epsilon(1e-9));

        auto c = integrate_fourier_cosine(
            [](double x) { return std::exp(-x); }, w, spec);
        CHECK(c.value == doctest::Approx(1 / d).epsilon(1e-9));

        auto z = integrate_fourier_complex(
            [](double x) { return std::exp(-x); }, -w, spec);
        CHECK(z.value.real() == doctest::Approx(2 / d).epsilon(1e-9));
        CHECK(z.value.imag() == 0);
    }
    auto zero = integrate_fourier_sine([](double) { return 1.0; }, 0, spec);
    CHECK(zero.value == 0);
}

TEST_CASE("failures are reported")
{
    QuadratureSpec spec;
    auto bad = [](double x) {
        return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
    };
    CHECK_THROWS_AS(integrate(bad, 0, 1, spec), EvaluationError);

    spec.max_subdivisions = 3;
    auto r = integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1, spec);
    CHECK_FALSE(r.converged);
    CHECK_THROWS_AS(require_converged(r, "test"), ConvergenceError);

    QuadratureSpec neg;
    neg.rel_tol = -1;
    CHECK_THROWS(neg.validate());
}

TEST_CASE("Gauss-Legendre rules")
{
    for (int n : {1, 2, 5, 16, 48})
    {
        CAPTURE(n);
        auto rule = gauss_legendre(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        double wsum = 0;
        double moment = 0;
        int const deg = 2 * n - 2;  // even, so the exact moment is nonzero
        for (int i = 0; i < n; ++i)
        {
            wsum += rule.weights[i];
            moment += rule.weights[i] * std::pow(rule.nodes[i], deg);
        }
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(moment == doctest::Approx(2.0 / (deg + 1)).epsilon(1e-12));
    }
}

TEST_CASE("3D oracle")
{
    auto gauss = [](double x, double y, double z) {
        return std::exp(-(x * x + y * y + z * z));
    };
    double v = integrate_3d_oracle(gauss, 8.0, 96);
    CHECK(v == doctest::Approx(std::pow(pi, 1.5)).epsilon(1e-10));

    // Off-center exponential with explicit panel edges at the cusp
    std::vector<double> edges;
    for (double e = -30; e <= 30.001; e += 1)
        edges.push_back(e + 0.5);
    std::array<std::vector<double>, 3> grid{edges, edges, edges};
    auto expo = [](double x, double y, double z) {
        return std::exp(-std::sqrt((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)
                                   + (z - 0.5) * (z - 0.5)));
    };
    CHECK(integrate_3d_oracle(expo, grid, 8)
          == doctest::Approx(8 * pi).epsilon(1e-4));
}
