//---------------------------------------------------------------------------//
//! \file scattering.cpp
//---------------------------------------------------------------------------//
#include "decoh/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "decoh/parallel.hpp"

namespace decoh
{
namespace
{
constexpr double pi = std::numbers::pi;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();
}  // namespace

//---------------------------------------------------------------------------//
void ScatteringConfig::validate() const
{
    if (!(energy_ev > 0))
        throw DomainError("neutron energy must be positive");
    if (!(scatt_length_fm != 0) || !std::isfinite(scatt_length_fm))
        throw DomainError("scattering length must be nonzero");
    if (!(z0 >= 0))
        throw DomainError("z0 must be nonnegative");
    if (!(mass_ratio > 1))
        throw DomainError("target-to-neutron mass ratio must exceed 1");
    if (!(z_eff > 0))
        throw DomainError("effective charge must be positive");
    if (!(nucleus_size_fm > 0))
        throw DomainError("nucleus size must be positive");
}

QuadratureSpec scattering_spec()
{
    QuadratureSpec spec;
    spec.rel_tol = 1e-11;
    spec.abs_tol = 1e-14;
    spec.max_subdivisions = 1000;
    return spec;
}

//---------------------------------------------------------------------------//
// CONDITIONS
//---------------------------------------------------------------------------//
namespace
{
//! value << threshold
ConditionMargin below(double value, double threshold)
{
    return {value, threshold, threshold / value, value < threshold};
}

//! value >> threshold
ConditionMargin above(double value, double threshold)
{
    return {value, threshold, value / threshold, value > threshold};
}
}  // namespace

ConditionReport check_conditions(ScatteringConfig const& config,
                                 GaussianPacket const& packet,
                                 PhysicalConstants const& constants)
{
    config.validate();
    double const v_e = electron_velocity_scale(constants);
    double const dv = packet.velocity_spread() * constants.atomic_velocity();

    ConditionReport report;
    report.born_oppenheimer = below(dv, v_e);
    report.almost_diagonal = below(dv, v_e / packet.mass());

    double const d_over_ab = config.nucleus_size_fm * 1e-15 / constants.a_B;
    double const v_threshold = std::sqrt(d_over_ab) * v_e;
    report.observability
        = above(neutron_speed(config.energy_ev, constants), v_threshold);
    report.boundary_energy_ev = joule_to_ev(
        0.5 * constants.m_n * v_threshold * v_threshold, constants);
    report.q = neutron_q(config.energy_ev, constants);
    return report;
}

//---------------------------------------------------------------------------//
// KINEMATICS
//---------------------------------------------------------------------------//
namespace
{
//! |k - k'|^2 / k^2 for x = k'/k, stable near the forward direction
double transfer_sq(double x, double theta)
{
    double s = std::sin(theta / 2);
    return (1 - x) * (1 - x) + 4 * x * s * s;
}
}  // namespace

double kappa(double k,
             double k_prime,
             double theta,
             ScatteringConfig const& config,
             PhysicalConstants const& constants)
{
    if (!(k >= 0) || !(k_prime >= 0))
        throw DomainError("wavenumbers must be nonnegative");
    double const s = std::sin(theta / 2);
    double const transfer
        = std::sqrt((k - k_prime) * (k - k_prime) + 4 * k * k_prime * s * s);
    double const m_alpha = config.mass_ratio * constants.m_n;
    return constants.hbar / m_alpha * config.z_eff * transfer / constants.a_B;
}

double energy_mismatch(double k,
                       double k_prime,
                       double theta,
                       ScatteringConfig const& config,
                       PhysicalConstants const& constants)
{
    double const s = std::sin(theta / 2);
    double const transfer_sq
        = (k - k_prime) * (k - k_prime) + 4 * k * k_prime * s * s;
    double const m_n = constants.m_n;
    double const m_alpha = config.mass_ratio * m_n;
    return constants.hbar
           * ((k * k - k_prime * k_prime) / (2 * m_n)
              - transfer_sq / (2 * m_alpha));
}

double quasi_elastic_ratio(double theta, double mass_ratio)
{
    double const c = std::cos(theta);
    double const r = mass_ratio;
    return (c + std::sqrt(c * c + r * r - 1)) / (r + 1);
}

//---------------------------------------------------------------------------//
// TAU TRANSFORM
//---------------------------------------------------------------------------//
/*!
 * Closed-form profile G(u) = kappa F(kappa u) at z0 = 0.
 *
 * Expanding (1 + t + t^2/3)^2 = sum c_n t^n with c = (1, 2, 5/3, 2/3, 1/9)
 * gives G(u) = 2 Re sum c_n n! / (2 + i u)^(n+1), which collapses to
 * (32/3)(u^4 + 24 u^2 + 336) / (4 + u^2)^5. The rational form is evaluated
 * in powers of w = 1/(4 + u^2) to avoid cancellation in the tails.
 */
double tau_profile_closed(double u)
{
    double const w = 1 / (4 + u * u);
    double const uw = u * u * w;  // in [0, 1)
    double const w2 = w * w;
    double const w3 = w2 * w;
    return (32.0 / 3.0)
           * (uw * uw * w3 + 24 * uw * w2 * w2 + 336 * w3 * w2);
}

double tau_profile_numeric(double u, double z0, QuadratureSpec const& spec)
{
    double const zsq = z0 * z0;
    auto envelope = [zsq](double t) {
        double h = hydrogen_kernel(t);
        return h * h * std::exp(-zsq * t * t / 8);
    };
    QuadratureSpec local = spec;
    local.decay_scale = 0.5;
    auto result = integrate_fourier_complex(envelope, std::abs(u), local);
    return require_converged(result, "tau transform").real();
}

/*!
 * Multiplying the envelope by exp(-z0^2 t^2 / 8) convolves its transform
 * with a normalized Gaussian of standard deviation z0/2. The integrand is
 * smooth and positive, so no oscillatory quadrature is needed.
 */
double tau_profile_smoothed(double u, double z0, QuadratureSpec const& spec)
{
    if (!(z0 >= 0))
        throw DomainError("z0 must be nonnegative");
    if (z0 == 0)
        return tau_profile_closed(u);
    double const sigma = z0 / 2;
    double const norm = 1 / (std::sqrt(2 * pi) * sigma);
    auto integrand = [=](double v) {
        double const g = v / sigma;
        return norm * std::exp(-0.5 * g * g) * tau_profile_closed(u - v);
    };
    double const reach = 12 * sigma;
    std::vector<double> bps{-reach, 0.0, reach};
    for (double offset : {-8.0, -2.0, 0.0, 2.0, 8.0})
    {
        double const p = u + offset;
        if (p > -reach && p < reach)
            bps.push_back(p);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    auto result = integrate(integrand, bps, spec);
    return require_converged(result, "smoothed tau profile");
}

std::complex<double> tau_transform(double kappa_val,
                                   double omega,
                                   double z0,
                                   QuadratureSpec const& spec)
{
    if (!(kappa_val > 0))
    {
        throw DomainError(
            "tau transform is singular at zero momentum transfer");
    }
    if (!(z0 >= 0))
        throw DomainError("z0 must be nonnegative");
    double const u = omega / kappa_val;
    double const g = (z0 == 0) ? tau_profile_closed(u)
                               : tau_profile_smoothed(u, z0, spec);
    return {g / kappa_val, 0.0};
}

//---------------------------------------------------------------------------//
// CROSS SECTIONS
//---------------------------------------------------------------------------//
double f_theta(double theta)
{
    double const c = std::cos(theta);
    double const root = std::sqrt(15 + c * c);
    return (c + root) * (c + root) / root;
}

double h_theta(double theta)
{
    double const c = std::cos(theta);
    double const root_sq = 15 + c * c;
    double const sum = c + std::sqrt(root_sq);
    return 6075.0 / 64.0 * (3 + 5 * c * c)
           / (root_sq * root_sq * sum * sum);
}

//---------------------------------------------------------------------------//
/*!
 * Numeric differential cross-section.
 *
 * In terms of x = k'/k the double integral reduces to
 *   dsigma/dOmega = a^2 (1+r)^2 / (pi r^2) int_0^inf x^2 G(W/K) / K dx
 * with W = (1 - x^2) - |k-k'|^2/(r k^2) and K = 2 Z* |k-k'| / (r k^2 a_B).
 * For z0 > 0 the Gaussian packet factor enters G with z0 / Z*, since the
 * kernel argument carries Z* while the packet overlap does not.
 */
NumericCrossSection
diff_cross_section_numeric(ScatteringConfig const& config,
                           double theta,
                           PhysicalConstants const& constants,
                           QuadratureSpec const& spec)
{
    config.validate();
    if (!(theta > 0 && theta <= pi))
    {
        throw DomainError(
            "numeric cross-section needs 0 < theta <= pi (the forward "
            "elastic point is singular)");
    }
    double const q = neutron_q(config.energy_ev, constants);
    double const r = config.mass_ratio;
    double const c = std::cos(theta);
    double const rate = 2 * config.z_eff / (r * q);
    double const packet_z = config.z0 / config.z_eff;
    QuadratureSpec inner = spec;
    inner.rel_tol = std::max(spec.rel_tol, 1e-10);
    inner.abs_tol = std::max(spec.abs_tol, 1e-13);

    auto integrand = [&](double x) {
        double const qsq = transfer_sq(x, theta);
        double const big_k = rate * std::sqrt(qsq);
        double const mismatch = (1 - x * x) - qsq / r;
        double const u = mismatch / big_k;
        double const g = (packet_z == 0) ? tau_profile_closed(u)
                                         : tau_profile_smoothed(u, packet_z, inner);
        return x * x * g / big_k;
    };

    NumericCrossSection out;
    double const x0 = quasi_elastic_ratio(theta, r);
    double const slope = std::abs(-2 * x0 - 2 * (x0 - c) / r);
    out.peak_ratio = x0;
    out.peak_width = rate * std::sqrt(transfer_sq(x0, theta)) / slope;

    constexpr double outer = 4;
    std::vector<double> bps{0.0, x0, 1.0, outer};
    auto refine_around = [&bps](double centre, double scale) {
        for (double s = scale; s < 2; s *= 2)
        {
            for (double p : {centre - s, centre + s})
            {
                if (p > 0 && p < outer)
                    bps.push_back(p);
            }
        }
    };
    refine_around(x0, out.peak_width);
    refine_around(1.0, 2 * std::sin(theta / 2));
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    QuadratureSpec local = spec;
    if (packet_z > 0)
        local.rel_tol = std::max(spec.rel_tol, 1e-9);
    local.max_subdivisions = spec.max_subdivisions + static_cast<int>(bps.size());
    auto body = integrate(integrand, bps, local);
    QuadratureSpec tail_spec = local;
    tail_spec.decay_scale = 1;
    auto tail = integrate_semi_infinite(integrand, tail_spec, outer);

    out.reduced = body.value + tail.value;
    out.evaluations = body.evaluations + tail.evaluations;
    double const prefactor = config.scatt_length_fm * config.scatt_length_fm
                             * (1 + r) * (1 + r) / (pi * r * r);
    out.value = prefactor * out.reduced;
    out.error_estimate = prefactor
                         * (body.error_estimate + tail.error_estimate);
    if (!body.converged || !tail.converged)
    {
        std::ostringstream msg;
        msg << "numeric cross-section did not converge at theta = " << theta
            << " rad (quasi-elastic peak k'/k = " << x0 << ", width "
            << out.peak_width << ", estimate " << out.value << " +- "
            << out.error_estimate << ")";
        throw ConvergenceError(msg.str());
    }
    return out;
}

//---------------------------------------------------------------------------//
double diff_cross_section_leading(ScatteringConfig const& config,
                                  double theta)
{
    // m_n^2 g^2 / (25 pi^2 hbar^4) with g = 2 pi hbar^2 a / mu, m_alpha = 4 m_n
    constexpr double r = 4;
    double const a = config.scatt_length_fm;
    double const prefactor = 4 * a * a * (1 + r) * (1 + r) / (25 * r * r);
    return prefactor * f_theta(theta);
}

double anomalous_fraction(ScatteringConfig const& config,
                          double theta,
                          PhysicalConstants const& constants)
{
    double const q = neutron_q(config.energy_ev, constants);
    return h_theta(theta) / (q * q);
}

double diff_cross_section_asymptotic(ScatteringConfig const& config,
                                     double theta,
                                     PhysicalConstants const& constants)
{
    config.validate();
    return diff_cross_section_leading(config, theta)
           * (1 + anomalous_fraction(config, theta, constants));
}

//---------------------------------------------------------------------------//
// ANGULAR SCANS
//---------------------------------------------------------------------------//
ScanMethod parse_scan_method(std::string const& name)
{
    if (name == "numeric")
        return ScanMethod::numeric;
    if (name == "asymptotic")
        return ScanMethod::asymptotic;
    if (name == "both")
        return ScanMethod::both;
    throw DomainError("unknown method '" + name
                      + "' (expected numeric, asymptotic or both)");
}

std::string to_string(ScanMethod method)
{
    switch (method)
    {
        case ScanMethod::numeric:
            return "numeric";
        case ScanMethod::asymptotic:
            return "asymptotic";
        case ScanMethod::both:
            return "both";
    }
    return "both";
}

AngularTable angular_scan(ScatteringConfig const& config,
                          int n_points,
                          ScanMethod method,
                          PhysicalConstants const& constants,
                          int threads)
{
    config.validate();
    if (n_points < 2)
        throw DomainError("angular scan needs at least two points");

    AngularTable table;
    table.method = method;
    table.q = neutron_q(config.energy_ev, constants);
    std::size_t const n = n_points;
    table.theta_grid.resize(n);
    table.dsigma_numeric.assign(n, nan);
    table.dsigma_asymptotic.assign(n, nan);
    table.anomalous_fraction.resize(n);
    std::vector<std::optional<std::string>> errors(n);

    bool const numeric = method != ScanMethod::asymptotic;
    bool const asymptotic = method != ScanMethod::numeric;
    parallel_for(n, threads, [&](std::size_t i) {
        double const theta = (i + 1 == n) ? pi : pi * i / (n - 1);
        table.theta_grid[i] = theta;
        table.anomalous_fraction[i]
            = anomalous_fraction(config, theta, constants);
        if (asymptotic)
        {
            table.dsigma_asymptotic[i]
                = diff_cross_section_asymptotic(config, theta, constants);
        }
        if (numeric)
        {
            try
            {
                double const at = std::max(theta, forward_angle_offset);
                table.dsigma_numeric[i]
                    = diff_cross_section_numeric(config, at, constants).value;
            }
            catch (std::exception const& e)
            {
                errors[i] = e.what();
            }
        }
    });
    for (std::size_t i = 0; i < n; ++i)
    {
        if (errors[i])
            table.failures.push_back({table.theta_grid[i], *errors[i]});
    }
    return table;
}

//---------------------------------------------------------------------------//
double total_cross_section(ScatteringConfig const& config,
                           ScanMethod method,
                           PhysicalConstants const& constants,
                           int order)
{
    if (method == ScanMethod::both)
        throw DomainError("total cross-section needs a single method");
    auto rule = gauss_legendre(order);
    double sum = 0;
    for (int i = 0; i < order; ++i)
    {
        double const theta = 0.5 * pi * (1 + rule.nodes[i]);
        double const value
            = (method == ScanMethod::numeric)
                  ? diff_cross_section_numeric(config, theta, constants).value
                  : diff_cross_section_asymptotic(config, theta, constants);
        sum += rule.weights[i] * std::sin(theta) * value;
    }
    return 2 * pi * 0.5 * pi * sum;
}

//---------------------------------------------------------------------------//
}  // namespace decoh
