//---------------------------------------------------------------------------//
//! \file units.cpp
//---------------------------------------------------------------------------//
#include "decoh/units.hpp"

#include <cmath>
#include <sstream>

namespace decoh
{
//---------------------------------------------------------------------------//
std::vector<std::string> const& PhysicalConstants::override_keys()
{
    static std::vector<std::string> const keys{"hbar",
                                               "m_e",
                                               "m_p",
                                               "m_n",
                                               "m_alpha",
                                               "a_B",
                                               "e2_coulomb",
                                               "eV",
                                               "m_alpha_over_m_n"};
    return keys;
}

//---------------------------------------------------------------------------//
/*!
 * Return a copy with the given fields replaced.
 *
 * The ratio key is applied last so that it is relative to any overridden
 * neutron mass.
 */
PhysicalConstants PhysicalConstants::with_overrides(
    std::map<std::string, double> const& overrides) const
{
    PhysicalConstants result = *this;
    std::map<std::string, double*> const fields{
        {"hbar", &result.hbar},
        {"m_e", &result.m_e},
        {"m_p", &result.m_p},
        {"m_n", &result.m_n},
        {"m_alpha", &result.m_alpha},
        {"a_B", &result.a_B},
        {"e2_coulomb", &result.e2_coulomb},
        {"eV", &result.eV},
    };
    for (auto const& [key, value] : overrides)
    {
        if (key == "m_alpha_over_m_n")
            continue;
        auto iter = fields.find(key);
        if (iter == fields.end())
            throw DomainError("unknown physical constant '" + key + "'");
        *iter->second = value;
    }
    if (auto iter = overrides.find("m_alpha_over_m_n");
        iter != overrides.end())
    {
        result.m_alpha = iter->second * result.m_n;
    }
    result.validate();
    return result;
}

//---------------------------------------------------------------------------//
void PhysicalConstants::validate() const
{
    for (double v : {hbar, m_e, m_p, m_n, m_alpha, a_B, e2_coulomb, eV})
    {
        if (!(v > 0) || !std::isfinite(v))
            throw DomainError("physical constants must be positive");
    }
    double bohr = hbar * hbar / (m_e * e2_coulomb);
    if (std::abs(bohr / a_B - 1) > 1e-6)
    {
        std::ostringstream msg;
        msg << "a_B = " << a_B << " m is inconsistent with hbar^2/(m_e e^2) = "
            << bohr << " m";
        throw DomainError(msg.str());
    }
    double ratio = m_alpha / m_n;
    if (ratio < 3.96 || ratio > 4.0)
    {
        std::ostringstream msg;
        msg << "m_alpha/m_n = " << ratio << " outside [3.96, 4]";
        throw DomainError(msg.str());
    }
}

//---------------------------------------------------------------------------//
double neutron_wavenumber(double energy_joule, PhysicalConstants const& c)
{
    if (!(energy_joule > 0))
        throw DomainError("neutron energy must be positive");
    return std::sqrt(2 * c.m_n * energy_joule) / c.hbar;
}

double neutron_q(double energy_ev, PhysicalConstants const& c)
{
    return neutron_wavenumber(ev_to_joule(energy_ev, c), c) * c.a_B;
}

double neutron_speed(double energy_ev, PhysicalConstants const& c)
{
    if (!(energy_ev > 0))
        throw DomainError("neutron energy must be positive");
    return std::sqrt(2 * ev_to_joule(energy_ev, c) / c.m_n);
}

double electron_velocity_scale(PhysicalConstants const& c)
{
    return c.hbar / (c.m_e * c.a_B);
}

double proton_velocity_scale(PhysicalConstants const& c)
{
    return electron_velocity_scale(c) * (c.m_e / c.m_p);
}

//---------------------------------------------------------------------------//
}  // namespace decoh
