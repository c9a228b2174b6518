//---------------------------------------------------------------------------//
//! \file twoslit.cpp
//---------------------------------------------------------------------------//
#include "decoh/twoslit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "decoh/density.hpp"
#include "decoh/parallel.hpp"
#include "decoh/units.hpp"

namespace decoh
{
//---------------------------------------------------------------------------//
void TwoSlitConfig::validate() const
{
    double total = std::norm(amp1) + std::norm(amp2);
    if (std::abs(total - 1) > 1e-12)
        throw DomainError("slit amplitudes must satisfy |a|^2 + |b|^2 = 1");
    if (!(norm(slit1 - slit2) > 0))
        throw DomainError("slits must be at distinct positions");
    if (!(packet_delta > 0) || !(mass > 0))
        throw DomainError("packet width and mass must be positive");
}

GaussianPacket TwoSlitConfig::packet1() const
{
    return GaussianPacket(packet_delta, slit1, momentum, mass);
}

GaussianPacket TwoSlitConfig::packet2() const
{
    return GaussianPacket(packet_delta, slit2, momentum, mass);
}

TwoSlitConfig TwoSlitConfig::symmetric(double separation,
                                       double delta,
                                       double mass,
                                       double spread,
                                       Vec3 momentum)
{
    TwoSlitConfig config;
    config.slit1 = {0, separation / 2, 0};
    config.slit2 = {0, -separation / 2, 0};
    config.packet_delta = delta;
    config.mass = mass;
    config.momentum = momentum;
    config.t0 = config.packet1().time_for_spread(spread);
    config.validate();
    return config;
}

//---------------------------------------------------------------------------//
double coherent_pattern(TwoSlitConfig const& config, Vec3 const& r)
{
    auto alpha = config.packet1().evaluate(r, config.t0);
    auto beta = config.packet2().evaluate(r, config.t0);
    return std::norm(config.amp1 * alpha + config.amp2 * beta);
}

double decohered_pattern(TwoSlitConfig const& config, Vec3 const& r)
{
    return std::norm(config.amp1) * config.packet1().density(r, config.t0)
           + std::norm(config.amp2) * config.packet2().density(r, config.t0);
}

double interference_term(TwoSlitConfig const& config, Vec3 const& r)
{
    auto alpha = config.packet1().evaluate(r, config.t0);
    auto beta = config.packet2().evaluate(r, config.t0);
    return 2
           * std::real(config.amp1 * std::conj(config.amp2) * alpha
                       * std::conj(beta));
}

double schmidt_overlap(TwoSlitConfig const& config)
{
    return hydrogen_kernel(norm(config.slit1 - config.slit2));
}

//---------------------------------------------------------------------------//
double visibility(std::vector<double> const& pattern_values)
{
    if (pattern_values.size() < 3)
        throw DomainError("visibility needs at least three samples");
    auto [lo, hi] = std::minmax_element(pattern_values.begin(),
                                        pattern_values.end());
    if (!(*hi + *lo > 0))
        throw DomainError("visibility of an all-zero pattern is undefined");
    return (*hi - *lo) / (*hi + *lo);
}

//---------------------------------------------------------------------------//
ScreenScan screen_scan(TwoSlitConfig const& config,
                       double half_extent,
                       int points,
                       int threads)
{
    config.validate();
    if (points < 2)
        throw DomainError("screen scan needs at least two points");
    Vec3 const c1 = config.packet1().center(config.t0);
    Vec3 const c2 = config.packet2().center(config.t0);
    Vec3 const mid = 0.5 * (c1 + c2);
    Vec3 axis = config.slit1 - config.slit2;
    axis = (1 / norm(axis)) * axis;

    ScreenScan scan;
    scan.coordinate.resize(points);
    scan.coherent.resize(points);
    scan.decohered.resize(points);
    parallel_for(points, threads, [&](std::size_t i) {
        double u = -half_extent + 2 * half_extent * i / (points - 1);
        Vec3 r = mid + u * axis;
        scan.coordinate[i] = u;
        scan.coherent[i] = coherent_pattern(config, r);
        scan.decohered[i] = decohered_pattern(config, r);
    });
    return scan;
}

//---------------------------------------------------------------------------//
/*!
 * Period of the cross-term phase along the slit axis.
 *
 * The relative phase of the two packets varies as
 * tau d u / (2 delta^2 (1 + tau^2)) with tau the spreading parameter.
 */
double fringe_period(TwoSlitConfig const& config)
{
    double const tau = config.packet1().spread(config.t0);
    if (!(tau > 0))
        throw DomainError("no fringes before the packets spread (t0 = 0)");
    double const d = norm(config.slit1 - config.slit2);
    double const delta2 = config.packet_delta * config.packet_delta;
    return 4 * std::numbers::pi * delta2 * (1 + tau * tau) / (tau * d);
}

//---------------------------------------------------------------------------//
}  // namespace decoh
