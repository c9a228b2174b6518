//---------------------------------------------------------------------------//
//! \file decoh/scattering.hpp
//! Slow-neutron scattering on a helium atom whose nucleus is entangled with
//! its electrons.
//!
//! The laboratory-frame differential cross-section is evaluated two ways:
//! by the reduced (tau, k') double integral with the helium coherence
//! kernel, and by its large-q expansion f(theta) (1 + h(theta)/q^2).
//---------------------------------------------------------------------------//
#pragma once

#include <complex>
#include <string>
#include <vector>

#include "density.hpp"
#include "quadrature.hpp"
#include "units.hpp"
#include "wavepacket.hpp"

namespace decoh
{
//---------------------------------------------------------------------------//
/*!
 * Parameters of the neutron-helium collision.
 *
 * \c z0 = a_B / delta for the helium center-of-mass packet; zero means a
 * packet much wider than the atom. \c nucleus_size sets the collision time
 * d/v in the observability condition.
 */
struct ScatteringConfig
{
    double energy_ev{1.0};
    double scatt_length_fm{3.26};
    double z0{0.0};
    double mass_ratio{4.0};
    double z_eff{helium_z_star};
    double nucleus_size_fm{0.2};

    void validate() const;
};

//---------------------------------------------------------------------------//
//! Angle in the laboratory frame below which the forward point is avoided
inline constexpr double forward_angle_offset = 1e-6;

//---------------------------------------------------------------------------//
// CONDITIONS
//---------------------------------------------------------------------------//
//! A "value << threshold" (or ">>") check with its safety margin
struct ConditionMargin
{
    double value{0};
    double threshold{0};
    double margin{0};  //!< factor by which the inequality holds
    bool satisfied{false};
};

struct ConditionReport
{
    //! Packet velocity spread vs hbar/(m_e a_B)
    ConditionMargin born_oppenheimer;
    //! Packet velocity spread vs hbar/(M a_B)
    ConditionMargin almost_diagonal;
    //! Neutron speed vs sqrt(d/a_B) hbar/(m_e a_B)
    ConditionMargin observability;
    //! Neutron energy at which the observability margin is one
    double boundary_energy_ev{0};
    //! Dimensionless neutron wavenumber k a_B
    double q{0};
};

ConditionReport check_conditions(ScatteringConfig const& config,
                                 GaussianPacket const& packet,
                                 PhysicalConstants const& constants);

//---------------------------------------------------------------------------//
// KINEMATICS
//---------------------------------------------------------------------------//
// Momentum-transfer rate (hbar/m_alpha) Z* |k - k'| / a_B in 1/s
double kappa(double k,
             double k_prime,
             double theta,
             ScatteringConfig const& config,
             PhysicalConstants const& constants);

// Energy-mismatch frequency
// hbar [(k^2 - k'^2)/(2 m_n) - |k - k'|^2/(2 m_alpha)] in 1/s
double energy_mismatch(double k,
                       double k_prime,
                       double theta,
                       ScatteringConfig const& config,
                       PhysicalConstants const& constants);

// k'/k on the recoil-shifted elastic line for a target of mass ratio r
double quasi_elastic_ratio(double theta, double mass_ratio);

//---------------------------------------------------------------------------//
// TAU TRANSFORM
//---------------------------------------------------------------------------//
/*!
 * Spectral weight
 * F(omega) = int dtau D(kappa|tau|) exp(-i omega tau - z0^2 kappa^2 tau^2/8)
 * with D(t) = (1 + t + t^2/3)^2 exp(-2t).
 *
 * For z0 = 0 the closed form is used; otherwise the transform is computed
 * by oscillatory quadrature. The result is real and even in omega.
 */
std::complex<double> tau_transform(double kappa_val,
                                   double omega,
                                   double z0,
                                   QuadratureSpec const& spec = {});

// Closed form at z0 = 0 in the reduced variable: kappa F = G(omega/kappa)
double tau_profile_closed(double u);

// Same profile by oscillatory quadrature, including the Gaussian damping z0
double tau_profile_numeric(double u, double z0, QuadratureSpec const& spec);

// Damped profile as the closed form convolved with a Gaussian of width z0/2
double tau_profile_smoothed(double u, double z0, QuadratureSpec const& spec);

//---------------------------------------------------------------------------//
// CROSS SECTIONS (fm^2 / sr)
//---------------------------------------------------------------------------//
// Leading-order lab-frame angular factor (integrates to 16 pi)
double f_theta(double theta);

// Coefficient of the 1/q^2 decoherence correction
double h_theta(double theta);

//! Default tolerances for the scattering integrals
QuadratureSpec scattering_spec();

//! Diagnostics of a numeric cross-section evaluation
struct NumericCrossSection
{
    double value{0};          //!< fm^2/sr
    double reduced{0};        //!< dimensionless k'-integral
    double error_estimate{0}; //!< on value
    long evaluations{0};
    double peak_ratio{0};     //!< k'/k of the quasi-elastic line
    double peak_width{0};     //!< width of the line in k'/k
};

/*!
 * Differential cross-section from the reduced double integral.
 *
 * The tau integral is done analytically (or by quadrature for z0 > 0);
 * the k' integral is partitioned geometrically around the quasi-elastic
 * line and around the zero-momentum-transfer point k' = k.
 */
NumericCrossSection
diff_cross_section_numeric(ScatteringConfig const& config,
                           double theta,
                           PhysicalConstants const& constants,
                           QuadratureSpec const& spec = scattering_spec());

// (m_n^2 g^2 / (25 pi^2 hbar^4)) f(theta) (1 + h(theta)/q^2), m_alpha = 4 m_n
double diff_cross_section_asymptotic(ScatteringConfig const& config,
                                     double theta,
                                     PhysicalConstants const& constants);

// Leading term of the asymptotic formula, a^2 f(theta) / 4
double diff_cross_section_leading(ScatteringConfig const& config,
                                  double theta);

// h(theta)/q^2 at the configured energy
double anomalous_fraction(ScatteringConfig const& config,
                          double theta,
                          PhysicalConstants const& constants);

//---------------------------------------------------------------------------//
// ANGULAR SCANS
//---------------------------------------------------------------------------//
enum class ScanMethod
{
    numeric,
    asymptotic,
    both
};

ScanMethod parse_scan_method(std::string const& name);
std::string to_string(ScanMethod method);

struct ScanFailure
{
    double theta;
    std::string message;
};

/*!
 * Differential cross-sections on a uniform lab-angle grid.
 *
 * Columns not requested by the method hold NaN. The numeric path is
 * evaluated at theta = forward_angle_offset instead of exactly zero.
 */
struct AngularTable
{
    std::vector<double> theta_grid;
    std::vector<double> dsigma_numeric;
    std::vector<double> dsigma_asymptotic;
    std::vector<double> anomalous_fraction;
    double q{0};
    ScanMethod method{ScanMethod::both};
    std::vector<ScanFailure> failures;
};

AngularTable angular_scan(ScatteringConfig const& config,
                          int n_points,
                          ScanMethod method,
                          PhysicalConstants const& constants,
                          int threads = 1);

// 2 pi int dsigma/dOmega sin(theta) dtheta with a Gauss-Legendre rule
double total_cross_section(ScatteringConfig const& config,
                           ScanMethod method,
                           PhysicalConstants const& constants,
                           int order = 48);

//---------------------------------------------------------------------------//
}  // namespace decoh
