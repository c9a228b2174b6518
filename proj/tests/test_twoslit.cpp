//---------------------------------------------------------------------------//
//! \file test_twoslit.cpp
//---------------------------------------------------------------------------//
#include "decoh/twoslit.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <doctest.h>

#include "decoh/density.hpp"
#include "decoh/quadrature.hpp"

using namespace decoh;

namespace
{
TwoSlitConfig far_field()
{
    return TwoSlitConfig::symmetric(1000, 200, 1837.15267343, 1000, {1, 0, 0});
}
}  // namespace

TEST_CASE("configuration validation")
{
    TwoSlitConfig c;
    CHECK_NOTHROW(c.validate());
    c.amp1 = 1;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = TwoSlitConfig{};
    c.slit2 = c.slit1;
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("patterns are nonnegative and satisfy the cross-term identity")
{
    auto c = far_field();
    c.amp2 = std::polar(std::sqrt(0.5), 0.7);
    double const period = fringe_period(c);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-period, period);
    auto mid = 0.5 * (c.packet1().center(c.t0) + c.packet2().center(c.t0));
    for (int i = 0; i < 100; ++i)
    {
        Vec3 r = mid;
        r[1] += u(rng);
        double const coh = coherent_pattern(c, r);
        double const dec = decohered_pattern(c, r);
        CHECK(coh >= 0);
        CHECK(dec >= 0);
        CHECK(std::abs(coh - dec - interference_term(c, r))
              <= 1e-10 * std::max(coh, dec));
    }
}

TEST_CASE("far-field visibilities")
{
    auto c = far_field();
    double const period = fringe_period(c);
    auto scan = screen_scan(c, period / 2, 201, 2);
    CHECK(visibility(scan.coherent) >= 0.99);
    CHECK(visibility(scan.coherent) >= visibility(scan.decohered));
    // The decohered envelope ripple over one fringe is set by
    // period / width = 4 pi delta / d, independent of time
    CHECK(visibility(scan.decohered) == doctest::Approx(0.375).epsilon(0.01));
}

TEST_CASE("fringe period matches the sampled maxima")
{
    auto c = far_field();
    double const period = fringe_period(c);
    auto scan = screen_scan(c, period, 801, 1);
    // Coherent pattern has maxima at 0 and at +-period
    double const center = coherent_pattern(
        c, 0.5 * (c.packet1().center(c.t0) + c.packet2().center(c.t0)));
    CHECK(scan.coherent[400] == doctest::Approx(center));
    double const edge_ratio = scan.coherent.back() / scan.decohered.back();
    // Envelopes differ slightly off the midline, so minima are not exact zeros
    CHECK(edge_ratio == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(scan.coherent[200] <= 1e-5 * scan.coherent[400]);
}

TEST_CASE("single packet has envelope contrast only")
{
    auto c = far_field();
    c.amp1 = 1;
    c.amp2 = 0;
    auto scan = screen_scan(c, fringe_period(c) / 2, 101, 1);
    CHECK(scan.coherent == scan.decohered);
}

TEST_CASE("visibility errors")
{
    CHECK_THROWS_AS(visibility({1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(visibility({0.0, 0.0, 0.0}), DomainError);
    CHECK(visibility({1.0, 3.0, 2.0}) == doctest::Approx(0.5));
}

TEST_CASE("Schmidt overlap is the hydrogen kernel")
{
    auto c = TwoSlitConfig::symmetric(3.0, 1.0, 1836.0, 1.0, {1, 0, 0});
    CHECK(schmidt_overlap(c) == doctest::Approx(hydrogen_kernel(3.0)));
}

TEST_CASE("coherent pattern norm includes the packet overlap")
{
    auto c = TwoSlitConfig::symmetric(10.0, 1.0, 50.0, 0.5, {0.2, 0, 0});
    auto center = 0.5 * (c.packet1().center(c.t0) + c.packet2().center(c.t0));
    double const w = c.packet1().width(c.t0);
    std::array<std::vector<double>, 3> edges;
    for (int axis = 0; axis < 3; ++axis)
    {
        double const half = axis == 1 ? 5 + 10 * w : 10 * w;
        for (int i = 0; i <= 24; ++i)
            edges[axis].push_back(center[axis] - half + 2 * half * i / 24);
    }
    double const norm = integrate_3d_oracle(
        [&](double x, double y, double z) {
            return coherent_pattern(c, {x, y, z});
        },
        edges,
        8);
    // Overlap of the two packets adds exp(-d^2 / (8 delta^2))
    CHECK(norm == doctest::Approx(1 + std::exp(-12.5)).epsilon(1e-9));
}
