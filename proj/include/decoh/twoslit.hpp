//---------------------------------------------------------------------------//
//! \file decoh/twoslit.hpp
//! Two-slit patterns with the electron-nucleus interaction kept (coherent)
//! or switched off at the slits (decohered).
//---------------------------------------------------------------------------//
#pragma once

#include <complex>
#include <vector>

#include "vec3.hpp"
#include "wavepacket.hpp"

namespace decoh
{
//---------------------------------------------------------------------------//
/*!
 * Geometry and state of the two-slit experiment, in atomic units.
 *
 * The outgoing waves are Gaussian packets of width \c packet_delta launched
 * from each slit with the common momentum \c momentum. The amplitudes obey
 * |amp1|^2 + |amp2|^2 = 1.
 */
struct TwoSlitConfig
{
    Vec3 slit1{0, 500, 0};
    Vec3 slit2{0, -500, 0};
    std::complex<double> amp1{0.70710678118654752440, 0};
    std::complex<double> amp2{0.70710678118654752440, 0};
    double packet_delta{200};
    double mass{1837.15267343};  //!< hydrogen atom, m_e units
    double t0{0};
    Vec3 momentum{1, 0, 0};

    void validate() const;

    GaussianPacket packet1() const;
    GaussianPacket packet2() const;

    //! Symmetric configuration with slits at +-separation/2 on the y axis
    static TwoSlitConfig symmetric(double separation,
                                   double delta,
                                   double mass,
                                   double spread,
                                   Vec3 momentum);
};

//---------------------------------------------------------------------------//
// |a alpha(r, t0) + b beta(r, t0)|^2
double coherent_pattern(TwoSlitConfig const& config, Vec3 const& r);

// |a|^2 |alpha(r, t0)|^2 + |b|^2 |beta(r, t0)|^2
double decohered_pattern(TwoSlitConfig const& config, Vec3 const& r);

// 2 Re[a b* alpha beta*], the interference term
double interference_term(TwoSlitConfig const& config, Vec3 const& r);

// Overlap of the electron pointer states phi_1s(r - r_s1), phi_1s(r - r_s2)
double schmidt_overlap(TwoSlitConfig const& config);

//---------------------------------------------------------------------------//
/*!
 * Fringe contrast (max - min) / (max + min) of sampled densities.
 *
 * Throws DomainError for fewer than three samples or an all-zero pattern.
 */
double visibility(std::vector<double> const& pattern_values);

//! Densities sampled along a line on the screen
struct ScreenScan
{
    std::vector<double> coordinate;
    std::vector<double> coherent;
    std::vector<double> decohered;
};

/*!
 * Sample both patterns along the line through the midpoint of the packet
 * centers at t0, parallel to the slit separation.
 */
ScreenScan screen_scan(TwoSlitConfig const& config,
                       double half_extent,
                       int points,
                       int threads = 1);

// Expected fringe period on the screen line at t0
double fringe_period(TwoSlitConfig const& config);

//---------------------------------------------------------------------------//
}  // namespace decoh
