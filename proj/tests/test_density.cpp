//---------------------------------------------------------------------------//
//! \file test_density.cpp
//---------------------------------------------------------------------------//
#include "decoh/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <doctest.h>

#include "decoh/quadrature.hpp"

using namespace decoh;

TEST_CASE("hydrogen kernel values")
{
    CHECK(hydrogen_kernel(0) == 1.0);
    CHECK(hydrogen_kernel(2) == doctest::Approx(0.5864528940).epsilon(1e-9));
    CHECK(hydrogen_kernel(10) == doctest::Approx(2.0127302e-3).epsilon(1e-7));
    CHECK_THROWS_AS(hydrogen_kernel(-0.1), DomainError);
    // Quadratic start: 1 - s^2/6 + O(s^4)
    double const s = 1e-3;
    CHECK(1 - hydrogen_kernel(s) == doctest::Approx(s * s / 6).epsilon(1e-3));
}

TEST_CASE("hydrogen kernel is the 1s overlap")
{
    // int phi(r) phi(r - d) d^3r by brute force, panel edges at both cusps
    for (double d : {0.5, 3.0})
    {
        CAPTURE(d);
        std::vector<double> x;
        for (double e = -20; e <= 20.001; e += 1.0)
            x.push_back(e);
        std::vector<double> z = x;
        z.push_back(d);
        std::sort(z.begin(), z.end());
        z.erase(std::unique(z.begin(), z.end()), z.end());
        auto overlap = [d](double a, double b, double c) {
            return orbital_1s({a, b, c}) * orbital_1s({a, b, c - d});
        };
        double v = integrate_3d_oracle(overlap, {x, x, z}, 6);
        CHECK(v == doctest::Approx(hydrogen_kernel(d)).epsilon(1e-4));
    }
}

TEST_CASE("helium kernel")
{
    double const s = 2 / helium_z_star;
    CHECK(helium_kernel(s) == doctest::Approx(0.3439270).epsilon(1e-6));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.01, 12);
    for (int i = 0; i < 50; ++i)
    {
        double const x = u(rng);
        double const h = hydrogen_kernel(helium_z_star * x);
        CHECK(helium_kernel(x) == doctest::Approx(h * h));
        CHECK(helium_kernel(x) <= h);
    }
}

TEST_CASE("coherence kernel objects")
{
    auto h = CoherenceKernel::hydrogen();
    auto he = CoherenceKernel::helium();
    auto none = CoherenceKernel::pure();
    CHECK(h(1.3) == doctest::Approx(hydrogen_kernel(1.3)));
    CHECK(he(1.3) == doctest::Approx(helium_kernel(1.3)));
    CHECK(none(1e3) == 1.0);
    CHECK(h.decay_length() == doctest::Approx(1.0));
    CHECK(he.decay_length() == doctest::Approx(1 / (2 * helium_z_star)));
    CHECK(std::isinf(none.decay_length()));
}

TEST_CASE("kernel widths")
{
    auto h = CoherenceKernel::hydrogen();
    double const half = kernel_half_width(h);
    CHECK(half == doctest::Approx(2.3303).epsilon(1e-4));
    CHECK(hydrogen_kernel(half) == doctest::Approx(0.5).epsilon(1e-10));
    double const one_percent = kernel_level_crossing(h, 0.01);
    CHECK(one_percent == doctest::Approx(8.022).epsilon(1e-3));
    CHECK(one_percent < 9.7);
    CHECK_THROWS(kernel_level_crossing(h, 1.5));
}

TEST_CASE("reduced density")
{
    GaussianPacket p(1.5, {0, 0, 0}, {0.3, 0, 0}, 1836.0);
    auto k = CoherenceKernel::hydrogen();
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 20; ++i)
    {
        Vec3 r{u(rng), u(rng), u(rng)};
        Vec3 rp{u(rng), u(rng), u(rng)};
        double const t = 100 * std::abs(u(rng));
        auto a = reduced_density(p, k, r, rp, t);
        auto b = reduced_density(p, k, rp, r, t);
        CHECK(std::abs(a - std::conj(b)) <= 1e-14 * (std::abs(a) + 1e-300));
        // Diagonal is the packet density for every kernel
        auto diag = reduced_density(p, CoherenceKernel::helium(), r, r, t);
        CHECK(diag.real() == doctest::Approx(p.density(r, t)));
        CHECK(diag.imag() == doctest::Approx(0.0));
    }
}

TEST_CASE("off-diagonal bound")
{
    GaussianPacket p(2.0, {0, 0, 0}, {0, 0, 0}, 1836.0);
    auto k = CoherenceKernel::hydrogen();
    for (double s : {0.5, 3.0, 8.0})
    {
        auto check = check_offdiagonal_bound(p, k, 0.0, s, 500, 99);
        CHECK(check.satisfied);
        CHECK(check.samples == 500);
        CHECK(check.max_ratio <= 1.0);
        CHECK(check.envelope == doctest::Approx(offdiagonal_bound(k, s)));
    }
}

TEST_CASE("purity")
{
    double const coeff = 33 / (16 * std::sqrt(std::numbers::pi));
    CHECK(purity(1e-3) / 1e-9 == doctest::Approx(coeff).epsilon(1e-4));
    CHECK(purity(100) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS(purity(0.0));

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> logz(-3, 2);
    std::vector<double> zs(30);
    for (auto& z : zs)
        z = std::pow(10.0, logz(rng));
    std::sort(zs.begin(), zs.end());
    double prev = 0;
    for (double z : zs)
    {
        double const v = purity(z);
        CHECK(v > 0);
        CHECK(v <= 1);
        CHECK(v >= prev);
        prev = v;
    }

    GaussianPacket packet(3.0, {0, 0, 0}, {0, 0, 0}, 1836.0);
    double const t = packet.time_for_spread(2.0);
    CHECK(purity(packet, t) == doctest::Approx(purity(1 / packet.width(t))));
}

TEST_CASE("atom state")
{
    GaussianPacket p(2.0, {0, 0, 0}, {0.1, 0, 0}, 1836.0);
    Vec3 R{0.3, -0.2, 0.1};
    Vec3 re{1.0, 0.5, -0.4};
    auto bo = atom_state(p, R, re, 5.0, false, 1 / 1836.0);
    CHECK(std::abs(bo - p.evaluate(R, 5.0) * orbital_1s(re - R))
          <= 1e-15 * std::abs(bo));
    auto exact = atom_state(p, R, re, 5.0, true, 1 / 1836.0);
    CHECK(std::abs(exact - bo) <= 1e-3 * std::abs(bo));
    CHECK(orbital_1s({0, 0, 0})
          == doctest::Approx(1 / std::sqrt(std::numbers::pi)));
}
