//---------------------------------------------------------------------------//
//! \file decoh/quadrature.hpp
//! Adaptive one-dimensional quadrature and a tensor-product 3D oracle.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace decoh
{
//---------------------------------------------------------------------------//
//! Tolerances and budget for an adaptive integration.
struct QuadratureSpec
{
    double rel_tol{1e-9};
    double abs_tol{1e-12};
    //! Bisections allowed beyond the initial partition
    int max_subdivisions{200};
    //! Length over which the integrand decays by ~e; sets truncation
    double decay_scale{1.0};

    void validate() const;
};

//---------------------------------------------------------------------------//
template<class T>
struct QuadratureResult
{
    T value{};
    double error_estimate{0};
    long evaluations{0};
    bool converged{false};
};

using RealResult = QuadratureResult<double>;
using ComplexResult = QuadratureResult<std::complex<double>>;

//---------------------------------------------------------------------------//
//! Integrand returned a non-finite value.
class EvaluationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! An integral required by a physics routine failed to converge.
class ConvergenceError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//---------------------------------------------------------------------------//
// Truncation point for semi-infinite domains, in units of decay_scale
inline constexpr double truncation_decay_lengths = 40;

namespace detail
{
//---------------------------------------------------------------------------//
// 21-point Gauss-Kronrod rule with its embedded 10-point Gauss rule
struct GaussKronrod21
{
    static constexpr std::array<double, 11> xgk{
        0.995657163025808080735527280689003,
        0.973906528517171720077964012084452,
        0.930157491355708226001207180059508,
        0.865063366688984510732096688423493,
        0.780817726586416897063717578345042,
        0.679409568299024406234327365114874,
        0.562757134668604683339000099272694,
        0.433395394129247190799265943165784,
        0.294392862701460198131126603103866,
        0.148874338981631210884826001129720,
        0.000000000000000000000000000000000};
    static constexpr std::array<double, 11> wgk{
        0.011694638867371874278064396062192,
        0.032558162307964727478818972459390,
        0.054755896574351996031381300244580,
        0.075039674810919952767043140916190,
        0.093125454583697605535065465083366,
        0.109387158802297641899210590325805,
        0.123491976262065851077208067625400,
        0.134709217311473325928054001771707,
        0.142775938577060080797094273138717,
        0.147739104901338491374841515972068,
        0.149445554002916905664936468389821};
    //! Gauss weights for the odd-indexed Kronrod nodes 1, 3, ..., 9
    static constexpr std::array<double, 5> wg{
        0.066671344308688137593568809893332,
        0.149451349150580593145776339657697,
        0.219086362515982043995534934228163,
        0.269266719309996355091226921569469,
        0.295524224714752870173892994651338};
};

template<class T>
struct Segment
{
    double a;
    double b;
    T value;
    double error;

    bool operator<(Segment const& other) const { return error < other.error; }
};

template<class T>
inline double magnitude(T const& v)
{
    return std::abs(v);
}

template<class T>
inline bool finite(T const& v)
{
    if constexpr (std::is_same_v<T, double>)
        return std::isfinite(v);
    else
        return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template<class T, class F>
T checked_call(F const& f, double x)
{
    T v = f(x);
    if (!finite(v))
    {
        std::ostringstream msg;
        msg << "integrand is not finite at x = " << x;
        throw EvaluationError(msg.str());
    }
    return v;
}

//---------------------------------------------------------------------------//
/*!
 * Apply the 21-point Kronrod rule on [a, b].
 *
 * The error estimate follows the QUADPACK heuristic, including the roundoff
 * floor of 50 eps times the integral of |f|.
 */
template<class T, class F>
Segment<T> gk21(F const& f, double a, double b)
{
    using R = GaussKronrod21;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();

    double const center = 0.5 * (a + b);
    double const half = 0.5 * (b - a);

    std::array<T, 21> fv;
    T const fc = checked_call<T>(f, center);
    T kronrod = fc * R::wgk[10];
    T gauss{};
    double resabs = std::abs(R::wgk[10]) * magnitude(fc);
    for (int j = 0; j < 10; ++j)
    {
        double dx = half * R::xgk[j];
        T f1 = checked_call<T>(f, center - dx);
        T f2 = checked_call<T>(f, center + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        kronrod += R::wgk[j] * (f1 + f2);
        resabs += R::wgk[j] * (magnitude(f1) + magnitude(f2));
        if (j % 2 == 1)
            gauss += R::wg[j / 2] * (f1 + f2);
    }
    T const mean = 0.5 * kronrod;
    double resasc = R::wgk[10] * magnitude(fc - mean);
    for (int j = 0; j < 10; ++j)
    {
        resasc += R::wgk[j]
                  * (magnitude(fv[2 * j] - mean)
                     + magnitude(fv[2 * j + 1] - mean));
    }

    double const absh = std::abs(half);
    kronrod *= half;
    gauss *= half;
    resabs *= absh;
    resasc *= absh;

    double err = magnitude(kronrod - gauss);
    if (resasc != 0 && err != 0)
        err = resasc * std::min(1.0, std::pow(200 * err / resasc, 1.5));
    if (resabs > tiny / (50 * eps))
        err = std::max(50 * eps * resabs, err);
    return {a, b, kronrod, err};
}

//---------------------------------------------------------------------------//
/*!
 * Globally adaptive integration over a partition given by breakpoints.
 *
 * The segment with the largest error estimate is bisected until the summed
 * estimate meets the tolerance, the bisection budget is spent, or the worst
 * segment can no longer be split in floating point.
 */
template<class T, class F>
QuadratureResult<T> adaptive(F const& f,
                             std::span<double const> breakpoints,
                             QuadratureSpec const& spec)
{
    QuadratureResult<T> result;
    if (breakpoints.size() < 2)
    {
        result.converged = true;
        return result;
    }

    std::priority_queue<Segment<T>> queue;
    T total{};
    double total_err = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    {
        if (breakpoints[i] == breakpoints[i + 1])
            continue;
        auto seg = gk21<T>(f, breakpoints[i], breakpoints[i + 1]);
        result.evaluations += 21;
        total += seg.value;
        total_err += seg.error;
        queue.push(seg);
    }

    auto target = [&] {
        return std::max(spec.abs_tol, spec.rel_tol * magnitude(total));
    };

    int splits = 0;
    bool converged = total_err <= target();
    while (!converged && splits < spec.max_subdivisions && !queue.empty())
    {
        Segment<T> worst = queue.top();
        double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > std::min(worst.a, worst.b)
              && mid < std::max(worst.a, worst.b)))
        {
            break;
        }
        queue.pop();
        auto left = gk21<T>(f, worst.a, mid);
        auto right = gk21<T>(f, mid, worst.b);
        result.evaluations += 42;
        ++splits;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        converged = total_err <= target();
    }

    // Resum to shed the drift of the incremental updates
    total = T{};
    total_err = 0;
    while (!queue.empty())
    {
        total += queue.top().value;
        total_err += queue.top().error;
        queue.pop();
    }
    result.value = total;
    result.error_estimate = total_err;
    result.converged = total_err <= target();
    return result;
}

//---------------------------------------------------------------------------//
/*!
 * Integrate over [start, inf) given the integral up to start.
 *
 * Successive chunks [x, x + chunk] (with chunk doubling) are added until a
 * chunk contributes less than the tolerance.
 */
template<class T, class F>
void extend_tail(F const& f,
                 double start,
                 double chunk,
                 QuadratureSpec const& spec,
                 QuadratureResult<T>& result,
                 bool double_chunks)
{
    constexpr int max_chunks = 64;
    double x = start;
    for (int i = 0; i < max_chunks; ++i)
    {
        std::array<double, 2> ends{x, x + chunk};
        auto piece = adaptive<T>(f, ends, spec);
        result.value += piece.value;
        result.error_estimate += piece.error_estimate;
        result.evaluations += piece.evaluations;
        result.converged = result.converged && piece.converged;
        double tol = std::max(spec.abs_tol,
                              spec.rel_tol * magnitude(result.value));
        x += chunk;
        if (magnitude(piece.value) + piece.error_estimate <= tol)
            return;
        if (double_chunks)
            chunk *= 2;
    }
    result.converged = false;
}

//---------------------------------------------------------------------------//
// Zero-aligned panels of an oscillation: offset + k pi/omega up to `end`
std::vector<double>
oscillation_panels(double omega, double phase_offset, double end);

}  // namespace detail

//---------------------------------------------------------------------------//
// FINITE INTERVALS
//---------------------------------------------------------------------------//
//! Adaptive integral over [a, b]
template<class F>
RealResult integrate(F const& f, double a, double b, QuadratureSpec const& spec)
{
    std::array<double, 2> ends{a, b};
    return detail::adaptive<double>(f, ends, spec);
}

//! Adaptive integral over the partition defined by sorted breakpoints
template<class F>
RealResult integrate(F const& f,
                     std::span<double const> breakpoints,
                     QuadratureSpec const& spec)
{
    return detail::adaptive<double>(f, breakpoints, spec);
}

//! Complex-valued integrand over the partition defined by breakpoints
template<class F>
ComplexResult integrate_complex(F const& f,
                                std::span<double const> breakpoints,
                                QuadratureSpec const& spec)
{
    return detail::adaptive<std::complex<double>>(f, breakpoints, spec);
}

//---------------------------------------------------------------------------//
// SEMI-INFINITE INTERVALS
//---------------------------------------------------------------------------//
/*!
 * Integrate f over [origin, inf).
 *
 * The domain is truncated at 40 decay lengths and integrated adaptively; the
 * remainder is then swept in doubling chunks until a chunk is negligible,
 * which also covers integrands with algebraic tails.
 */
template<class F>
RealResult integrate_semi_infinite(F const& f,
                                   QuadratureSpec const& spec,
                                   double origin = 0)
{
    spec.validate();
    double const length = truncation_decay_lengths * spec.decay_scale;
    std::vector<double> bps;
    constexpr int initial_panels = 8;
    for (int i = 0; i <= initial_panels; ++i)
        bps.push_back(origin + length * i / initial_panels);
    auto result = detail::adaptive<double>(f, bps, spec);
    detail::extend_tail<double>(
        f, origin + length, length, spec, result, /* double_chunks = */ true);
    return result;
}

//---------------------------------------------------------------------------//
// OSCILLATORY INTEGRALS
//---------------------------------------------------------------------------//
namespace detail
{
template<class F>
RealResult integrate_oscillatory(F const& envelope,
                                 double omega,
                                 bool sine,
                                 QuadratureSpec const& spec)
{
    auto integrand = [&envelope, omega, sine](double s) -> double {
        double phase = omega * s;
        return envelope(s) * (sine ? std::sin(phase) : std::cos(phase));
    };
    double const half_period = std::numbers::pi / omega;
    if (half_period >= spec.decay_scale)
    {
        // Fewer than one sign change per decay length: no panel alignment
        return integrate_semi_infinite(integrand, spec);
    }

    double const length = truncation_decay_lengths * spec.decay_scale;
    auto bps = oscillation_panels(omega, sine ? 0.0 : 0.5, length);
    QuadratureSpec sub = spec;
    sub.max_subdivisions = spec.max_subdivisions
                           + static_cast<int>(bps.size());
    auto result = adaptive<double>(integrand, bps, sub);

    // Tail beyond the truncation point, in blocks of whole half periods
    double const end = bps.back();
    double const chunk = half_period
                         * std::max(1.0, std::ceil(length / half_period));
    std::vector<double> block;
    constexpr int max_blocks = 64;
    double x = end;
    for (int i = 0; i < max_blocks; ++i)
    {
        block = oscillation_panels(omega, 0, chunk);
        for (double& b : block)
            b += x;
        auto piece = adaptive<double>(integrand, block, sub);
        result.value += piece.value;
        result.error_estimate += piece.error_estimate;
        result.evaluations += piece.evaluations;
        result.converged = result.converged && piece.converged;
        x = block.back();
        double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(result.value));
        if (std::abs(piece.value) + piece.error_estimate <= tol)
            return result;
    }
    result.converged = false;
    return result;
}
}  // namespace detail

/*!
 * Fourier sine integral of a decaying envelope, int_0^inf f(s) sin(omega s).
 *
 * Panels are aligned with the zeros k pi / omega and refined adaptively
 * under a single global error budget.
 */
template<class F>
RealResult integrate_fourier_sine(F const& f,
                                  double omega,
                                  QuadratureSpec const& spec)
{
    spec.validate();
    if (omega < 0)
        throw std::domain_error("Fourier frequency must be nonnegative");
    if (omega == 0)
        return {0.0, 0.0, 0, true};
    return detail::integrate_oscillatory(f, omega, /* sine = */ true, spec);
}

//! Fourier cosine integral int_0^inf f(s) cos(omega s)
template<class F>
RealResult integrate_fourier_cosine(F const& f,
                                    double omega,
                                    QuadratureSpec const& spec)
{
    spec.validate();
    if (omega < 0)
        throw std::domain_error("Fourier frequency must be nonnegative");
    if (omega == 0)
        return integrate_semi_infinite(f, spec);
    return detail::integrate_oscillatory(f, omega, /* sine = */ false, spec);
}

/*!
 * Full-line transform of an even envelope: int f(|t|) exp(-i omega t) dt.
 *
 * For even damping the imaginary part vanishes identically, so the result
 * is assembled as twice the half-line cosine transform.
 */
template<class F>
ComplexResult integrate_fourier_complex(F const& f,
                                        double omega,
                                        QuadratureSpec const& spec)
{
    auto half = integrate_fourier_cosine(f, std::abs(omega), spec);
    ComplexResult result;
    result.value = {2 * half.value, 0.0};
    result.error_estimate = 2 * half.error_estimate;
    result.evaluations = half.evaluations;
    result.converged = half.converged;
    return result;
}

//---------------------------------------------------------------------------//
// HELPERS
//---------------------------------------------------------------------------//
//! Gauss-Legendre nodes and weights on [-1, 1]
struct GaussLegendre
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

//! Throw ConvergenceError naming the quantity if the result did not converge
template<class T>
T const& require_converged(QuadratureResult<T> const& result,
                           std::string const& what)
{
    if (!result.converged)
    {
        std::ostringstream msg;
        msg << what << ": quadrature did not converge (estimate "
            << result.value << ", error " << result.error_estimate
            << ", evaluations " << result.evaluations << ")";
        throw ConvergenceError(msg.str());
    }
    return result.value;
}

//---------------------------------------------------------------------------//
// 3D ORACLE
//---------------------------------------------------------------------------//
using Function3 = std::function<double(double, double, double)>;

/*!
 * Tensor-product Gauss-Legendre integral over a cube.
 *
 * Each axis of [center - half_width, center + half_width] is split into
 * panels of eight points when n is a multiple of eight (a single n-point
 * rule otherwise). Slow by construction; intended as a test oracle.
 */
double integrate_3d_oracle(Function3 const& f,
                           double half_width,
                           int n,
                           std::array<double, 3> const& center = {0, 0, 0});

/*!
 * Tensor-product oracle over explicit per-axis panel edges.
 *
 * Placing integrand kinks (orbital cusps) on panel edges restores the
 * spectral accuracy of the panel rule.
 */
double integrate_3d_oracle(Function3 const& f,
                           std::array<std::vector<double>, 3> const& edges,
                           int points_per_panel);

//---------------------------------------------------------------------------//
}  // namespace decoh
