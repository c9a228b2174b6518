//---------------------------------------------------------------------------//
//! \file decoh/units.hpp
//! Physical constants and conversions between SI and atomic-style units.
//---------------------------------------------------------------------------//
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace decoh
{
//---------------------------------------------------------------------------//
//! Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//---------------------------------------------------------------------------//
/*!
 * SI values of the constants used throughout the library.
 *
 * Internally every module works in atomic-style units (hbar = m_e = a_B = 1,
 * energies in hartree); SI only enters at the command-line boundary. The
 * defaults are CODATA 2018 values. Any field may be overridden from a
 * `key=value` table, e.g. to reproduce rounded literature numbers.
 */
struct PhysicalConstants
{
    double hbar{1.054571817e-34};         //!< J s
    double m_e{9.1093837015e-31};         //!< kg
    double m_p{1.67262192369e-27};        //!< kg
    double m_n{1.67492749804e-27};        //!< kg
    double m_alpha{6.6446573357e-27};     //!< kg
    double a_B{5.29177210903e-11};        //!< m
    double e2_coulomb{2.307077552e-28};   //!< J m  (e^2 / 4 pi eps0)
    double eV{1.602176634e-19};           //!< J

    //! CODATA defaults
    static PhysicalConstants codata() { return {}; }

    // Apply overrides; keys are field names or "m_alpha_over_m_n"
    PhysicalConstants
    with_overrides(std::map<std::string, double> const& overrides) const;

    // Throw DomainError if any invariant fails
    void validate() const;

    //! Names accepted by with_overrides
    static std::vector<std::string> const& override_keys();

    //! Hartree energy e^2/(4 pi eps0 a_B) in joules
    double hartree() const { return e2_coulomb / a_B; }
    //! Atomic unit of time hbar / E_h in seconds
    double atomic_time() const { return hbar / this->hartree(); }
    //! Atomic unit of velocity a_B E_h / hbar in m/s
    double atomic_velocity() const { return a_B / this->atomic_time(); }
};

//---------------------------------------------------------------------------//
// Conversions
//---------------------------------------------------------------------------//
inline double ev_to_joule(double ev, PhysicalConstants const& c)
{
    return ev * c.eV;
}
inline double joule_to_ev(double j, PhysicalConstants const& c)
{
    return j / c.eV;
}
inline double meters_to_bohr(double m, PhysicalConstants const& c)
{
    return m / c.a_B;
}
inline double bohr_to_meters(double ab, PhysicalConstants const& c)
{
    return ab * c.a_B;
}
//! Mass in units of the electron mass
inline double mass_in_me(double kg, PhysicalConstants const& c)
{
    return kg / c.m_e;
}

//---------------------------------------------------------------------------//
// Kinematics
//---------------------------------------------------------------------------//
// Neutron wavenumber k = sqrt(2 m_n E)/hbar in 1/m
double neutron_wavenumber(double energy_joule, PhysicalConstants const& c);

// Dimensionless q = k a_B for a neutron of the given energy in eV
double neutron_q(double energy_ev, PhysicalConstants const& c);

// Neutron speed sqrt(2E/m_n) in m/s
double neutron_speed(double energy_ev, PhysicalConstants const& c);

// hbar / (m_e a_B), the orbital electron velocity scale (m/s)
double electron_velocity_scale(PhysicalConstants const& c);

// hbar / (m_p a_B), the proton velocity scale below which the proton
// reduced density matrix is almost diagonal (m/s)
double proton_velocity_scale(PhysicalConstants const& c);

//---------------------------------------------------------------------------//
}  // namespace decoh
