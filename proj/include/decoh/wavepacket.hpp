//---------------------------------------------------------------------------//
//! \file decoh/wavepacket.hpp
//! Freely spreading Gaussian center-of-mass wave packet.
//---------------------------------------------------------------------------//
#pragma once

#include <complex>

#include "units.hpp"
#include "vec3.hpp"

namespace decoh
{
//---------------------------------------------------------------------------//
/*!
 * Free Gaussian wave packet in atomic units (hbar = m_e = a_B = 1).
 *
 * \c delta is the initial position spread, \c mass the total mass in units
 * of m_e, \c p0 the mean momentum in hbar/a_B. Time is a parameter of
 * evaluation in atomic time units; the packet itself is immutable.
 */
class GaussianPacket
{
  public:
    GaussianPacket(double delta, Vec3 r0, Vec3 p0, double mass);

    //! Packet amplitude psi(R, t)
    std::complex<double> evaluate(Vec3 const& r, double t) const;

    //! Probability density |psi(R, t)|^2
    double density(Vec3 const& r, double t) const;

    /*!
     * One-dimensional factor along a Cartesian axis.
     *
     * The packet is the product of its three axis factors times the global
     * phase exp(-i P0^2 t / 2M), which drops out of every bilinear quantity.
     */
    std::complex<double> axis_factor(int axis, double x, double t) const;

    //! Position spread Delta x(t) = sqrt(delta^2 + (t/(2 M delta))^2)
    double width(double t) const;

    //! Dimensionless spreading parameter hbar t / (2 M delta^2)
    double spread(double t) const;

    //! Center of the density at time t
    Vec3 center(double t) const;

    //! Velocity uncertainty hbar/(2 M delta) in atomic velocity units
    double velocity_spread() const;

    //! Time at which hbar t/(2 M delta^2) equals the given value
    double time_for_spread(double spread) const;

    double delta() const { return delta_; }
    Vec3 const& r0() const { return r0_; }
    Vec3 const& p0() const { return p0_; }
    double mass() const { return mass_; }

  private:
    double delta_;
    Vec3 r0_;
    Vec3 p0_;
    double mass_;
};

//---------------------------------------------------------------------------//
// a_B / Delta x(t)
double z_parameter(GaussianPacket const& packet, double t);

// a_B / delta
double z0_parameter(GaussianPacket const& packet);

//---------------------------------------------------------------------------//
}  // namespace decoh
