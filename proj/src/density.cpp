//---------------------------------------------------------------------------//
//! \file density.cpp
//---------------------------------------------------------------------------//
#include "decoh/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "decoh/units.hpp"

namespace decoh
{
//---------------------------------------------------------------------------//
double hydrogen_kernel(double s)
{
    if (!(s >= 0))
        throw DomainError("kernel separation must be nonnegative");
    return (1 + s + s * s / 3) * std::exp(-s);
}

double helium_kernel(double s, double z_star)
{
    double h = hydrogen_kernel(z_star * s);
    return h * h;
}

//---------------------------------------------------------------------------//
double CoherenceKernel::operator()(double s) const
{
    switch (species)
    {
        case Species::hydrogen:
            return hydrogen_kernel(z_eff * s);
        case Species::helium:
            return helium_kernel(s, z_eff);
        case Species::none:
            if (!(s >= 0))
                throw DomainError("kernel separation must be nonnegative");
            return 1;
    }
    return 1;
}

double CoherenceKernel::decay_length() const
{
    switch (species)
    {
        case Species::hydrogen:
            return 1 / z_eff;
        case Species::helium:
            return 1 / (2 * z_eff);
        case Species::none:
            return std::numeric_limits<double>::infinity();
    }
    return 1;
}

//---------------------------------------------------------------------------//
std::complex<double> reduced_density(GaussianPacket const& packet,
                                     CoherenceKernel const& kernel,
                                     Vec3 const& r,
                                     Vec3 const& r_prime,
                                     double t)
{
    return packet.evaluate(r, t) * std::conj(packet.evaluate(r_prime, t))
           * kernel(norm(r - r_prime));
}

//---------------------------------------------------------------------------//
double offdiagonal_bound(CoherenceKernel const& kernel, double s)
{
    return kernel(s);
}

//---------------------------------------------------------------------------//
/*!
 * Sample pairs at fixed separation around the packet center.
 *
 * Midpoints are drawn within two widths of the center and directions
 * uniformly on the sphere.
 */
BoundCheck check_offdiagonal_bound(GaussianPacket const& packet,
                                   CoherenceKernel const& kernel,
                                   double t,
                                   double s,
                                   int samples,
                                   std::uint64_t seed)
{
    BoundCheck check;
    check.envelope = offdiagonal_bound(kernel, s);
    check.samples = samples;
    double const peak = packet.density(packet.center(t), t);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> offset(-2.0, 2.0);
    double const w = packet.width(t);
    Vec3 const c = packet.center(t);
    for (int i = 0; i < samples; ++i)
    {
        Vec3 dir{gauss(rng), gauss(rng), gauss(rng)};
        dir = (1 / norm(dir)) * dir;
        Vec3 mid{c[0] + w * offset(rng),
                 c[1] + w * offset(rng),
                 c[2] + w * offset(rng)};
        Vec3 r = mid + (0.5 * s) * dir;
        Vec3 rp = mid - (0.5 * s) * dir;
        double rho = std::abs(reduced_density(packet, kernel, r, rp, t));
        check.max_ratio = std::max(check.max_ratio,
                                   rho / (peak * check.envelope));
    }
    // Allow for rounding in the products
    check.satisfied = check.max_ratio <= 1 + 1e-12;
    return check;
}

//---------------------------------------------------------------------------//
/*!
 * Purity of the hydrogen nucleus.
 *
 * Tr rho^2 = z^3/(2 sqrt pi) int_0^inf s^2 D_H(s)^2 exp(-s^2 z^2/4) ds,
 * the overlap of the squared kernel with the autocorrelation of |psi|^2.
 */
double purity(double z, QuadratureSpec const& spec)
{
    if (!(z > 0) || !std::isfinite(z))
        throw DomainError("purity needs a positive finite z");
    auto integrand = [z](double s) {
        double d = (1 + s + s * s / 3);
        return s * s * d * d * std::exp(-2 * s - s * s * z * z / 4);
    };
    QuadratureSpec local = spec;
    local.decay_scale = std::min(0.5, 2 / z);
    auto result = integrate_semi_infinite(integrand, local);
    double integral = require_converged(result, "purity");
    return z * z * z / (2 * std::sqrt(std::numbers::pi)) * integral;
}

double purity(GaussianPacket const& packet, double t, QuadratureSpec const& spec)
{
    return purity(z_parameter(packet, t), spec);
}

//---------------------------------------------------------------------------//
double kernel_level_crossing(CoherenceKernel const& kernel, double level)
{
    if (!(level > 0 && level < 1))
        throw DomainError("kernel level must lie in (0, 1)");
    if (kernel.species == CoherenceKernel::Species::none)
        throw DomainError("a pure-state kernel never decays");
    // D is strictly decreasing: bracket then bisect
    double lo = 0;
    double hi = kernel.decay_length();
    while (kernel(hi) > level)
    {
        lo = hi;
        hi *= 2;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i)
    {
        double mid = 0.5 * (lo + hi);
        (kernel(mid) > level ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double kernel_half_width(CoherenceKernel const& kernel)
{
    return kernel_level_crossing(kernel, 0.5);
}

//---------------------------------------------------------------------------//
double orbital_1s(Vec3 const& r)
{
    return std::exp(-norm(r)) / std::sqrt(std::numbers::pi);
}

std::complex<double> atom_state(GaussianPacket const& packet,
                                Vec3 const& r_nucleus,
                                Vec3 const& r_electron,
                                double t,
                                bool exact_center_of_mass,
                                double electron_mass_ratio)
{
    Vec3 where = r_nucleus;
    if (exact_center_of_mass)
    {
        double const w = electron_mass_ratio / (1 + electron_mass_ratio);
        where = (1 - w) * r_nucleus + w * r_electron;
    }
    return packet.evaluate(where, t) * orbital_1s(r_electron - r_nucleus);
}

//---------------------------------------------------------------------------//
}  // namespace decoh
