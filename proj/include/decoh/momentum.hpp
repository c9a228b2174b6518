//---------------------------------------------------------------------------//
//! \file decoh/momentum.hpp
//! Momentum distribution of the nucleus from its reduced density matrix.
//!
//! Momenta are dimensionless offsets q = |p - P0| a_B / hbar and densities
//! are in units of a_B^3 / hbar^3.
//---------------------------------------------------------------------------//
#pragma once

#include <vector>

#include "density.hpp"
#include "quadrature.hpp"
#include "wavepacket.hpp"

namespace decoh
{
//---------------------------------------------------------------------------//
// Below this q the 1/q prefactor is replaced by its analytic limit
inline constexpr double small_q_threshold = 1e-6;

//---------------------------------------------------------------------------//
/*!
 * Radial momentum density for a Gaussian packet of width a_B / z0.
 *
 * Evaluates (1/(2 pi^2 q)) int_0^inf s sin(q s) D(s) exp(-s^2 z0^2 / 8) ds,
 * the Fourier transform of the diagonal-averaged density matrix. The
 * default kernel is hydrogen.
 */
double momentum_density(double q,
                        double z0,
                        CoherenceKernel const& kernel
                        = CoherenceKernel::hydrogen(),
                        QuadratureSpec const& spec = {});

// Pure-packet limit (2/pi)^{3/2} delta^3 exp(-2 p^2 delta^2)
double gaussian_limit(double p_offset, double delta);

// Bound-electron limit (8/pi^2) / (1 + q^2)^4
double electron_limit(double q);

/*!
 * Momentum density by direct evaluation of the diagonal average.
 *
 * The profile int d^3 r_par rho(r_par + s/2, r_par - s/2) is computed by
 * quadrature of the packet amplitudes at time t along an axis transverse
 * to P0, then Fourier transformed radially. Requires P0 to lie along a
 * coordinate axis (or vanish).
 */
double momentum_density_generic(GaussianPacket const& packet,
                                CoherenceKernel const& kernel,
                                Vec3 const& p,
                                double t = 0,
                                QuadratureSpec const& spec = {});

// Diagonal-averaged profile of the packet at separation s (transverse axis)
double diagonal_average(GaussianPacket const& packet, double s, double t);

//---------------------------------------------------------------------------//
//! Tabulated radial momentum distribution
struct MomentumDistribution
{
    std::vector<double> q_grid;
    std::vector<double> values;
    double z0{0};
};

MomentumDistribution momentum_distribution(std::vector<double> q_grid,
                                           double z0,
                                           CoherenceKernel const& kernel,
                                           int threads = 1);

// 4 pi int_0^inf q^2 momentum_density(q, z0) dq
double momentum_normalization(double z0,
                              CoherenceKernel const& kernel
                              = CoherenceKernel::hydrogen());

// q at which the density falls to half its q = 0 value
double momentum_half_width(double z0,
                           CoherenceKernel const& kernel
                           = CoherenceKernel::hydrogen());

//---------------------------------------------------------------------------//
}  // namespace decoh
