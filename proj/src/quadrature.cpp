//---------------------------------------------------------------------------//
//! \file quadrature.cpp
//---------------------------------------------------------------------------//
#include "decoh/quadrature.hpp"

#include <sstream>

namespace decoh
{
//---------------------------------------------------------------------------//
void QuadratureSpec::validate() const
{
    if (!(rel_tol > 0))
        throw std::domain_error("rel_tol must be positive");
    if (!(abs_tol >= 0))
        throw std::domain_error("abs_tol must be nonnegative");
    if (max_subdivisions < 1)
        throw std::domain_error("max_subdivisions must be at least 1");
    if (!(decay_scale > 0) || !std::isfinite(decay_scale))
        throw std::domain_error("decay_scale must be positive and finite");
}

namespace detail
{
//---------------------------------------------------------------------------//
std::vector<double>
oscillation_panels(double omega, double phase_offset, double end)
{
    double const half_period = std::numbers::pi / omega;
    constexpr double max_panels = 1e5;
    if (end / half_period > max_panels)
    {
        std::ostringstream msg;
        msg << "oscillatory integral at frequency " << omega << " needs "
            << end / half_period << " panels (limit " << max_panels << ")";
        throw ConvergenceError(msg.str());
    }
    std::vector<double> bps{0.0};
    double x = phase_offset * half_period;
    if (x > 0)
        bps.push_back(x);
    do
    {
        x += half_period;
        bps.push_back(x);
    } while (x < end);
    return bps;
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Nodes and weights by Newton iteration on the Legendre recurrence.
 */
GaussLegendre gauss_legendre(int n)
{
    if (n < 1)
        throw std::domain_error("Gauss-Legendre order must be positive");
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    int const m = (n + 1) / 2;
    for (int i = 0; i < m; ++i)
    {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1;
            double p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1)
            {
                p1 = x;
                p0 = 1;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // Recompute the derivative at the converged root
        double p0 = 1;
        double p1 = x;
        for (int k = 2; k <= n; ++k)
        {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1);
        double w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0;
    return rule;
}

namespace
{
//---------------------------------------------------------------------------//
struct AxisRule
{
    std::vector<double> x;
    std::vector<double> w;
};

AxisRule composite_rule(std::vector<double> const& edges, int points)
{
    auto gl = gauss_legendre(points);
    AxisRule rule;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p)
    {
        double c = 0.5 * (edges[p] + edges[p + 1]);
        double h = 0.5 * (edges[p + 1] - edges[p]);
        for (int i = 0; i < points; ++i)
        {
            rule.x.push_back(c + h * gl.nodes[i]);
            rule.w.push_back(h * gl.weights[i]);
        }
    }
    return rule;
}
}  // namespace

//---------------------------------------------------------------------------//
double integrate_3d_oracle(Function3 const& f,
                           std::array<std::vector<double>, 3> const& edges,
                           int points_per_panel)
{
    std::array<AxisRule, 3> rules;
    for (int d = 0; d < 3; ++d)
    {
        if (edges[d].size() < 2)
            throw std::domain_error("each axis needs at least one panel");
        rules[d] = composite_rule(edges[d], points_per_panel);
    }
    double total = 0;
    for (std::size_t i = 0; i < rules[0].x.size(); ++i)
    {
        double plane = 0;
        for (std::size_t j = 0; j < rules[1].x.size(); ++j)
        {
            double line = 0;
            for (std::size_t k = 0; k < rules[2].x.size(); ++k)
                line += rules[2].w[k] * f(rules[0].x[i], rules[1].x[j], rules[2].x[k]);
            plane += rules[1].w[j] * line;
        }
        total += rules[0].w[i] * plane;
    }
    return total;
}

//---------------------------------------------------------------------------//
double integrate_3d_oracle(Function3 const& f,
                           double half_width,
                           int n,
                           std::array<double, 3> const& center)
{
    if (n < 16)
        throw std::domain_error("3D oracle needs at least 16 points per axis");
    if (!(half_width > 0))
        throw std::domain_error("3D oracle box must have positive size");
    int const points = (n % 8 == 0) ? 8 : n;
    int const panels = n / points;
    std::array<std::vector<double>, 3> edges;
    for (int d = 0; d < 3; ++d)
    {
        for (int p = 0; p <= panels; ++p)
        {
            edges[d].push_back(center[d] - half_width
                               + 2 * half_width * p / panels);
        }
    }
    return integrate_3d_oracle(f, edges, points);
}

//---------------------------------------------------------------------------//
}  // namespace decoh
