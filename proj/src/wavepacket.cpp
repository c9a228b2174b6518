//---------------------------------------------------------------------------//
//! \file wavepacket.cpp
//---------------------------------------------------------------------------//
#include "decoh/wavepacket.hpp"

#include <cmath>
#include <numbers>

#include "decoh/units.hpp"

namespace decoh
{
using namespace std::complex_literals;

//---------------------------------------------------------------------------//
GaussianPacket::GaussianPacket(double delta, Vec3 r0, Vec3 p0, double mass)
    : delta_(delta), r0_(r0), p0_(p0), mass_(mass)
{
    if (!(delta_ > 0))
        throw DomainError("packet width delta must be positive");
    if (!(mass_ > 0))
        throw DomainError("packet mass must be positive");
}

//---------------------------------------------------------------------------//
double GaussianPacket::spread(double t) const
{
    return t / (2 * mass_ * delta_ * delta_);
}

double GaussianPacket::width(double t) const
{
    double drift = t / (2 * mass_ * delta_);
    return std::sqrt(delta_ * delta_ + drift * drift);
}

Vec3 GaussianPacket::center(double t) const
{
    return r0_ + (t / mass_) * p0_;
}

double GaussianPacket::velocity_spread() const
{
    return 1 / (2 * mass_ * delta_);
}

double GaussianPacket::time_for_spread(double spread) const
{
    return spread * 2 * mass_ * delta_ * delta_;
}

//---------------------------------------------------------------------------//
std::complex<double>
GaussianPacket::axis_factor(int axis, double x, double t) const
{
    std::complex<double> const spreading = 1.0 + 1i * this->spread(t);
    double const shifted = x - r0_[axis] - p0_[axis] * t / mass_;
    double const norm = std::pow(2 * std::numbers::pi * delta_ * delta_,
                                 -0.25);
    return norm / std::sqrt(spreading)
           * std::exp(-shifted * shifted / (4 * delta_ * delta_ * spreading)
                      + 1i * p0_[axis] * (x - r0_[axis]));
}

//---------------------------------------------------------------------------//
/*!
 * Evaluate the packet amplitude.
 *
 * The 3/2 power of the spreading factor uses the principal branch, which is
 * continuous since Re(1 + i t/(2 M delta^2)) = 1.
 */
std::complex<double> GaussianPacket::evaluate(Vec3 const& r, double t) const
{
    std::complex<double> const spreading = 1.0 + 1i * this->spread(t);
    Vec3 const shifted = r - this->center(t);
    double const norm = std::pow(2 * std::numbers::pi * delta_ * delta_,
                                 -0.75);
    std::complex<double> exponent
        = -1i * dot(p0_, p0_) * t / (2 * mass_)
          - dot(shifted, shifted) / (4 * delta_ * delta_ * spreading)
          + 1i * dot(p0_, r - r0_);
    return norm * std::pow(spreading, -1.5) * std::exp(exponent);
}

double GaussianPacket::density(Vec3 const& r, double t) const
{
    return std::norm(this->evaluate(r, t));
}

//---------------------------------------------------------------------------//
double z_parameter(GaussianPacket const& packet, double t)
{
    return 1 / packet.width(t);
}

double z0_parameter(GaussianPacket const& packet)
{
    return 1 / packet.delta();
}

//---------------------------------------------------------------------------//
}  // namespace decoh
