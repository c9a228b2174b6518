//---------------------------------------------------------------------------//
//! \file momentum.cpp
//---------------------------------------------------------------------------//
#include "decoh/momentum.hpp"

#include <cmath>
#include <string>
#include <numbers>

#include "decoh/parallel.hpp"
#include "decoh/units.hpp"

namespace decoh
{
namespace
{
constexpr double pi = std::numbers::pi;

//---------------------------------------------------------------------------//
/*!
 * Radial 3D Fourier transform of an isotropic profile f(s).
 *
 * Returns (1/(2 pi^2 q)) int s sin(qs) f(s) ds, switching to
 * (1/(2 pi^2)) int s^2 f(s) ds below the small-q threshold.
 */
template<class F>
double radial_transform(F const& profile,
                        double q,
                        double decay_scale,
                        QuadratureSpec spec,
                        char const* what)
{
    spec.decay_scale = decay_scale;
    if (q < small_q_threshold)
    {
        auto result = integrate_semi_infinite(
            [&profile](double s) { return s * s * profile(s); }, spec);
        return require_converged(result, what) / (2 * pi * pi);
    }
    auto result = integrate_fourier_sine(
        [&profile](double s) { return s * profile(s); }, q, spec);
    return require_converged(result, what) / (2 * pi * pi * q);
}

double profile_decay_scale(CoherenceKernel const& kernel, double delta)
{
    // The Gaussian factor exp(-s^2/(8 delta^2)) is negligible by 20 delta
    return std::min(kernel.decay_length(), 0.5 * delta);
}
}  // namespace

//---------------------------------------------------------------------------//
double momentum_density(double q,
                        double z0,
                        CoherenceKernel const& kernel,
                        QuadratureSpec const& spec)
{
    if (!(q >= 0))
        throw DomainError("momentum offset q must be nonnegative");
    if (!(z0 > 0) || !std::isfinite(z0))
        throw DomainError("z0 must be positive and finite");
    double const z0sq = z0 * z0;
    auto profile = [&kernel, z0sq](double s) {
        return kernel(s) * std::exp(-s * s * z0sq / 8);
    };
    return radial_transform(
        profile, q, profile_decay_scale(kernel, 1 / z0), spec,
        "momentum density");
}

//---------------------------------------------------------------------------//
double gaussian_limit(double p_offset, double delta)
{
    if (!(delta > 0))
        throw DomainError("packet width must be positive");
    double d3 = delta * delta * delta;
    return std::pow(2 / pi, 1.5) * d3
           * std::exp(-2 * p_offset * p_offset * delta * delta);
}

double electron_limit(double q)
{
    if (!(q >= 0))
        throw DomainError("momentum offset q must be nonnegative");
    double d = 1 + q * q;
    return 8 / (pi * pi) / (d * d * d * d);
}

//---------------------------------------------------------------------------//
namespace
{
int transverse_axis(Vec3 const& p0)
{
    int nonzero = 0;
    int along = -1;
    for (int i = 0; i < 3; ++i)
    {
        if (p0[i] != 0)
        {
            ++nonzero;
            along = i;
        }
    }
    if (nonzero > 1)
        throw DomainError("packet momentum must lie along a coordinate axis");
    return along == 0 ? 1 : 0;
}
}  // namespace

//---------------------------------------------------------------------------//
/*!
 * Integrate phi(x + s/2, t) phi*(x - s/2, t) over the transverse axis.
 *
 * The other two axis factors enter at zero separation, where they reduce to
 * their unit norms.
 */
double diagonal_average(GaussianPacket const& packet, double s, double t)
{
    int const axis = transverse_axis(packet.p0());
    double const c = packet.center(t)[axis];
    double const w = packet.width(t);
    auto integrand = [&packet, axis, s, t](double x) {
        return packet.axis_factor(axis, x + s / 2, t)
               * std::conj(packet.axis_factor(axis, x - s / 2, t));
    };
    std::vector<double> edges;
    constexpr int panels = 8;
    constexpr double reach = 12;
    for (int i = 0; i <= panels; ++i)
        edges.push_back(c - reach * w + 2 * reach * w * i / panels);
    QuadratureSpec spec;
    spec.rel_tol = 1e-13;
    spec.abs_tol = 1e-16;
    spec.max_subdivisions = 500;
    auto result = integrate_complex(integrand, edges, spec);
    return require_converged(result, "diagonal average").real();
}

//---------------------------------------------------------------------------//
double momentum_density_generic(GaussianPacket const& packet,
                                CoherenceKernel const& kernel,
                                Vec3 const& p,
                                double t,
                                QuadratureSpec const& spec)
{
    transverse_axis(packet.p0());
    double const q = norm(p - packet.p0());
    auto profile = [&packet, &kernel, t](double s) {
        return diagonal_average(packet, s, t) * kernel(s);
    };
    return radial_transform(profile,
                            q,
                            profile_decay_scale(kernel, packet.delta()),
                            spec,
                            "generic momentum density");
}

//---------------------------------------------------------------------------//
MomentumDistribution momentum_distribution(std::vector<double> q_grid,
                                           double z0,
                                           CoherenceKernel const& kernel,
                                           int threads)
{
    MomentumDistribution dist;
    dist.z0 = z0;
    dist.values.resize(q_grid.size());
    parallel_for(q_grid.size(), threads, [&](std::size_t i) {
        try
        {
            dist.values[i] = momentum_density(q_grid[i], z0, kernel);
        }
        catch (ConvergenceError const& e)
        {
            throw ConvergenceError("at q = " + std::to_string(q_grid[i])
                                   + ": " + e.what());
        }
    });
    dist.q_grid = std::move(q_grid);
    return dist;
}

//---------------------------------------------------------------------------//
double momentum_normalization(double z0, CoherenceKernel const& kernel)
{
    QuadratureSpec inner;
    inner.rel_tol = 1e-10;
    inner.abs_tol = 1e-13;
    inner.max_subdivisions = 400;
    auto integrand = [&](double q) {
        return 4 * pi * q * q * momentum_density(q, z0, kernel, inner);
    };
    QuadratureSpec outer;
    outer.rel_tol = 1e-8;
    outer.abs_tol = 1e-10;
    // Momentum width is the larger of the packet and kernel widths
    double kernel_width = (kernel.species == CoherenceKernel::Species::none)
                              ? 0.0
                              : 1 / kernel.decay_length();
    outer.decay_scale = std::max(kernel_width, z0 / 4);
    return require_converged(integrate_semi_infinite(integrand, outer),
                             "momentum normalization");
}

//---------------------------------------------------------------------------//
double momentum_half_width(double z0, CoherenceKernel const& kernel)
{
    double const half = 0.5 * momentum_density(0, z0, kernel);
    double lo = 0;
    double hi = std::max(0.1, z0 / 4);
    while (momentum_density(hi, z0, kernel) > half)
    {
        lo = hi;
        hi *= 2;
    }
    for (int i = 0; i < 60 && hi - lo > 1e-10 * hi; ++i)
    {
        double mid = 0.5 * (lo + hi);
        (momentum_density(mid, z0, kernel) > half ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

//---------------------------------------------------------------------------//
}  // namespace decoh
