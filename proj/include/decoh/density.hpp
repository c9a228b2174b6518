//---------------------------------------------------------------------------//
//! \file decoh/density.hpp
//! Reduced density matrix of an atomic nucleus in the Born-Oppenheimer
//! product state.
//---------------------------------------------------------------------------//
#pragma once

#include <complex>
#include <cstdint>

#include "quadrature.hpp"
#include "vec3.hpp"
#include "wavepacket.hpp"

namespace decoh
{
//---------------------------------------------------------------------------//
//! Effective charge of the helium variational ground state
inline constexpr double helium_z_star = 27.0 / 16.0;

//---------------------------------------------------------------------------//
// Hydrogen 1s coherence factor (1 + s + s^2/3) exp(-s), s in Bohr radii
double hydrogen_kernel(double s);

// Helium factor [hydrogen_kernel(z_star * s)]^2
double helium_kernel(double s, double z_star = helium_z_star);

//---------------------------------------------------------------------------//
/*!
 * Off-diagonal decay factor D(s) of the nuclear reduced density matrix.
 *
 * The density matrix in the Born-Oppenheimer approximation is
 * psi(r) psi*(r') D(|r - r'|). \c none is the kernel of an isolated nucleus
 * (pure state, D = 1) used as a reference.
 */
struct CoherenceKernel
{
    enum class Species
    {
        hydrogen,
        helium,
        none
    };

    Species species{Species::hydrogen};
    double z_eff{1.0};

    static CoherenceKernel hydrogen() { return {Species::hydrogen, 1.0}; }
    static CoherenceKernel helium()
    {
        return {Species::helium, helium_z_star};
    }
    static CoherenceKernel pure() { return {Species::none, 0.0}; }

    //! Evaluate D(s) for a separation in Bohr radii
    double operator()(double s) const;

    //! Length over which D decays by ~e (infinite for a pure state)
    double decay_length() const;
};

//---------------------------------------------------------------------------//
// rho(r, r') = psi(r,t) psi*(r',t) D(|r - r'|)
std::complex<double> reduced_density(GaussianPacket const& packet,
                                     CoherenceKernel const& kernel,
                                     Vec3 const& r,
                                     Vec3 const& r_prime,
                                     double t);

//---------------------------------------------------------------------------//
// Exponential envelope bounding |rho| / max|psi|^2 at separation s
double offdiagonal_bound(CoherenceKernel const& kernel, double s);

//! Sampled check of |rho(r, r')| <= max|psi|^2 * bound(|r - r'|)
struct BoundCheck
{
    double envelope{0};
    double max_ratio{0};  //!< max |rho| / (max|psi|^2 * envelope)
    int samples{0};
    bool satisfied{false};
};

BoundCheck check_offdiagonal_bound(GaussianPacket const& packet,
                                   CoherenceKernel const& kernel,
                                   double t,
                                   double s,
                                   int samples,
                                   std::uint64_t seed);

//---------------------------------------------------------------------------//
// Tr rho^2 for the hydrogen kernel as a function of z = a_B / Delta x
double purity(double z, QuadratureSpec const& spec = {});

// Tr rho^2 of the hydrogen nucleus for a packet at time t
double purity(GaussianPacket const& packet,
              double t,
              QuadratureSpec const& spec = {});

// Separation at which the kernel falls to one half
double kernel_half_width(CoherenceKernel const& kernel);

// Separation at which the kernel falls to a given level in (0, 1)
double kernel_level_crossing(CoherenceKernel const& kernel, double level);

//---------------------------------------------------------------------------//
// EXACT PRODUCT STATE
//---------------------------------------------------------------------------//
// Hydrogen 1s orbital exp(-r)/sqrt(pi) in atomic units
double orbital_1s(Vec3 const& r);

/*!
 * Two-body wave function psi(R) phi_1s(r_e - r_p).
 *
 * With \c exact_center_of_mass the packet is evaluated at the true center
 * of mass for the given electron-to-nucleus mass ratio; otherwise at the
 * nucleus position (Born-Oppenheimer form).
 */
std::complex<double> atom_state(GaussianPacket const& packet,
                                Vec3 const& r_nucleus,
                                Vec3 const& r_electron,
                                double t,
                                bool exact_center_of_mass,
                                double electron_mass_ratio);

//---------------------------------------------------------------------------//
}  // namespace decoh
