//---------------------------------------------------------------------------//
//! \file cli.cpp
//---------------------------------------------------------------------------//
#include "decoh/cli.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "decoh/density.hpp"
#include "decoh/momentum.hpp"
#include "decoh/parallel.hpp"
#include "decoh/scattering.hpp"
#include "decoh/twoslit.hpp"

#ifndef DECOH_VERSION
#    define DECOH_VERSION "0.0.0"
#endif

namespace decoh
{
namespace
{
using json = nlohmann::ordered_json;
using Kind = ParameterInfo::Kind;

constexpr std::array<Subcommand, 5> all_subcommands{Subcommand::purity,
                                                    Subcommand::momentum,
                                                    Subcommand::twoslit,
                                                    Subcommand::xsection,
                                                    Subcommand::conditions};

std::vector<std::string> const common_keys{"threads", "format", "output"};

//---------------------------------------------------------------------------//
// TEXT HELPERS
//---------------------------------------------------------------------------//
std::string trim(std::string const& s)
{
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    auto const last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string join(std::vector<std::string> const& items)
{
    std::string out;
    for (auto const& item : items)
    {
        if (!out.empty())
            out += ", ";
        out += item;
    }
    return out;
}

//! Shortest of %.15g / %.17g that reads back to the same double
std::string exact(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.15g", value);
    if (std::strtod(buf, nullptr) != value)
        std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string cell(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", value);
    return buf;
}

std::optional<double> to_real(std::string const& text)
{
    if (text.empty())
        return std::nullopt;
    char* end = nullptr;
    double const value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || !std::isfinite(value))
        return std::nullopt;
    return value;
}

std::optional<long> to_integer(std::string const& text)
{
    if (text.empty())
        return std::nullopt;
    char* end = nullptr;
    long const value = std::strtol(text.c_str(), &end, 10);
    if (end != text.c_str() + text.size())
        return std::nullopt;
    return value;
}

std::string dashed(std::string key)
{
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

std::string underscored(std::string key)
{
    std::replace(key.begin(), key.end(), '-', '_');
    return key;
}

std::string timestamp()
{
    auto const now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

//---------------------------------------------------------------------------//
// PARAMETER TABLES
//---------------------------------------------------------------------------//
std::vector<ParameterInfo> const purity_params{
    {"z_min", Kind::real, "1e-3", "1", "smallest z = a_B/width"},
    {"z_max", Kind::real, "1e2", "1", "largest z"},
    {"points", Kind::integer, "50", "count", "log-spaced grid points"},
};

std::vector<ParameterInfo> const momentum_params{
    {"z0", Kind::real, "1", "1", "a_B / delta of the initial packet"},
    {"q_max", Kind::real, "10", "hbar/a_B", "largest momentum"},
    {"points", Kind::integer, "101", "count", "uniform grid points from 0"},
    {"kernel", Kind::text, "hydrogen", "", "hydrogen or helium"},
};

std::vector<ParameterInfo> const twoslit_params{
    {"separation_ab", Kind::real, "1000", "a_B", "slit separation"},
    {"delta_ab", Kind::real, "200", "a_B", "packet width at the slits"},
    {"mass_me", Kind::real, "1837.15267343", "m_e", "atom mass"},
    {"p0", Kind::real, "1", "hbar/a_B", "common forward momentum"},
    {"spread", Kind::real, "1000", "1", "tau = t/(2 M delta^2) at the screen"},
    {"t0", Kind::real, "-1", "hbar/E_h", "screen time; negative uses spread"},
    {"prob1", Kind::real, "0.5", "1", "|a|^2, the first-slit probability"},
    {"phase_rad", Kind::real, "0", "rad", "phase of b relative to a"},
    {"half_extent_ab",
     Kind::real,
     "0",
     "a_B",
     "screen half-width; zero uses half a fringe period"},
    {"points", Kind::integer, "201", "count", "screen samples"},
};

std::vector<ParameterInfo> const xsection_params{
    {"energy_ev", Kind::real, "1", "eV", "neutron energy"},
    {"points", Kind::integer, "19", "count", "lab angles from 0 to pi"},
    {"method", Kind::text, "both", "", "numeric, asymptotic or both"},
    {"z0", Kind::real, "0", "1", "a_B / delta of the helium packet"},
    {"scatt_length_fm", Kind::real, "3.26", "fm", "n-alpha scattering length"},
    {"mass_ratio", Kind::real, "4", "1", "m_alpha / m_n"},
    {"nucleus_size_fm", Kind::real, "0.2", "fm", "nucleus size d"},
    {"delta_ab", Kind::real, "1000", "a_B", "helium packet width (margins)"},
};

std::vector<ParameterInfo> const conditions_params{
    {"energy_ev", Kind::real, "1", "eV", "neutron energy"},
    {"nucleus_size_fm", Kind::real, "0.2", "fm", "nucleus size d"},
    {"delta_ab", Kind::real, "1000", "a_B", "helium packet width"},
    {"mass_ratio", Kind::real, "4", "1", "m_alpha / m_n"},
};

ParameterInfo const* find_param(Subcommand cmd, std::string const& key)
{
    for (auto const& info : parameter_table(cmd))
    {
        if (info.key == key)
            return &info;
    }
    return nullptr;
}

bool is_constant_key(std::string const& key)
{
    auto const& keys = PhysicalConstants::override_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

bool is_common_key(std::string const& key)
{
    return std::find(common_keys.begin(), common_keys.end(), key)
           != common_keys.end();
}

//! Type-check a parameter and return its canonical text
std::string canonical(ParameterInfo const& info, std::string const& raw)
{
    std::string const unit = info.unit.empty() || info.unit == "1"
                                 ? std::string{"dimensionless"}
                                 : info.unit;
    switch (info.kind)
    {
        case Kind::real:
            if (auto v = to_real(raw))
                return exact(*v);
            throw UsageError(info.key + ": expected a number (" + unit
                             + "), got '" + raw + "'");
        case Kind::integer:
            if (auto v = to_integer(raw))
                return std::to_string(*v);
            throw UsageError(info.key + ": expected an integer (" + unit
                             + "), got '" + raw + "'");
        case Kind::text:
            return raw;
    }
    return raw;
}

//---------------------------------------------------------------------------//
// DOMAIN OBJECTS
//---------------------------------------------------------------------------//
CoherenceKernel make_kernel(std::string const& name)
{
    if (name == "hydrogen")
        return CoherenceKernel::hydrogen();
    if (name == "helium")
        return CoherenceKernel::helium();
    throw DomainError("kernel must be hydrogen or helium, got '" + name + "'");
}

TwoSlitConfig make_twoslit(RunConfig const& cfg)
{
    double const prob1 = cfg.real("prob1");
    if (!(prob1 >= 0 && prob1 <= 1))
        throw DomainError("prob1 must lie in [0, 1]");
    double const spread = cfg.real("spread");
    if (!(spread > 0))
        throw DomainError("spread must be positive");
    auto config = TwoSlitConfig::symmetric(cfg.real("separation_ab"),
                                           cfg.real("delta_ab"),
                                           cfg.real("mass_me"),
                                           spread,
                                           {cfg.real("p0"), 0, 0});
    config.amp1 = std::sqrt(prob1);
    config.amp2 = std::polar(std::sqrt(1 - prob1), cfg.real("phase_rad"));
    if (double t0 = cfg.real("t0"); t0 >= 0)
        config.t0 = t0;
    config.validate();
    return config;
}

ScatteringConfig make_scattering(RunConfig const& cfg)
{
    ScatteringConfig config;
    config.energy_ev = cfg.real("energy_ev");
    config.nucleus_size_fm = cfg.real("nucleus_size_fm");
    config.mass_ratio = cfg.real("mass_ratio");
    if (cfg.parameters.count("z0"))
        config.z0 = cfg.real("z0");
    if (cfg.parameters.count("scatt_length_fm"))
        config.scatt_length_fm = cfg.real("scatt_length_fm");
    config.validate();
    return config;
}

GaussianPacket helium_packet(RunConfig const& cfg)
{
    double const mass = cfg.real("mass_ratio")
                        * mass_in_me(cfg.constants.m_n, cfg.constants);
    return GaussianPacket(cfg.real("delta_ab"), {0, 0, 0}, {0, 0, 0}, mass);
}

void require_points(long points, long minimum)
{
    if (points < minimum)
    {
        throw DomainError("points must be at least "
                          + std::to_string(minimum));
    }
}

//! Check everything that can be checked before any computation
void validate(RunConfig const& cfg)
{
    switch (cfg.subcommand)
    {
        case Subcommand::purity: {
            double const lo = cfg.real("z_min");
            double const hi = cfg.real("z_max");
            if (!(lo > 0 && hi > lo))
                throw DomainError("need 0 < z_min < z_max");
            require_points(cfg.integer("points"), 2);
            break;
        }
        case Subcommand::momentum:
            if (!(cfg.real("z0") > 0))
                throw DomainError("z0 must be positive");
            if (!(cfg.real("q_max") > 0))
                throw DomainError("q_max must be positive");
            require_points(cfg.integer("points"), 2);
            make_kernel(cfg.text("kernel"));
            break;
        case Subcommand::twoslit:
            make_twoslit(cfg);
            if (!(cfg.real("half_extent_ab") >= 0))
                throw DomainError("half_extent_ab must be nonnegative");
            require_points(cfg.integer("points"), 3);
            break;
        case Subcommand::xsection:
            make_scattering(cfg);
            parse_scan_method(cfg.text("method"));
            require_points(cfg.integer("points"), 2);
            helium_packet(cfg);
            break;
        case Subcommand::conditions:
            make_scattering(cfg);
            helium_packet(cfg);
            break;
    }
}

//---------------------------------------------------------------------------//
// ARTIFACTS
//---------------------------------------------------------------------------//
struct Artifact
{
    json metadata = json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    json summary = json::object();
    std::vector<std::string> failures;
};

json to_json(ConditionMargin const& m)
{
    return json{{"value", m.value},
                {"threshold", m.threshold},
                {"margin", m.margin},
                {"satisfied", m.satisfied}};
}

json to_json(ConditionReport const& r)
{
    return json{{"born_oppenheimer", to_json(r.born_oppenheimer)},
                {"almost_diagonal", to_json(r.almost_diagonal)},
                {"observability", to_json(r.observability)},
                {"boundary_energy_ev", r.boundary_energy_ev},
                {"q", r.q}};
}

json to_json(QuadratureSpec const& spec)
{
    return json{{"rel_tol", spec.rel_tol},
                {"abs_tol", spec.abs_tol},
                {"max_subdivisions", spec.max_subdivisions}};
}

json constants_json(PhysicalConstants const& c)
{
    return json{{"hbar", c.hbar},
                {"m_e", c.m_e},
                {"m_p", c.m_p},
                {"m_n", c.m_n},
                {"m_alpha", c.m_alpha},
                {"a_B", c.a_B},
                {"e2_coulomb", c.e2_coulomb},
                {"eV", c.eV}};
}

std::string cell_text(json const& value)
{
    if (value.is_number())
        return cell(value.get<double>());
    if (value.is_null())
        return cell(std::numeric_limits<double>::quiet_NaN());
    if (value.is_boolean())
        return value.get<bool>() ? "true" : "false";
    return value.get<std::string>();
}

json real_cell(double value)
{
    return json(value);
}

void write_csv(Artifact const& art, RunConfig const& cfg, std::ostream& os)
{
    auto const& meta = art.metadata;
    os << "# tool=" << meta["tool"].get<std::string>() << '\n'
       << "# version=" << meta["version"].get<std::string>() << '\n'
       << "# generated=" << meta["generated"].get<std::string>() << '\n'
       << "# subcommand=" << meta["subcommand"].get<std::string>() << '\n';
    for (auto const& [key, value] : cfg.parameters)
        os << "# param " << key << '=' << value << '\n';
    for (auto const& [key, value] : meta["constants"].items())
        os << "# param " << key << '=' << exact(value.get<double>()) << '\n';
    os << "# tolerances " << meta["tolerances"].dump() << '\n';
    if (meta.contains("conditions"))
        os << "# conditions " << meta["conditions"].dump() << '\n';

    for (std::size_t i = 0; i < art.columns.size(); ++i)
        os << (i ? "," : "") << art.columns[i];
    os << '\n';
    for (auto const& row : art.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << cell_text(row[i]);
        os << '\n';
    }
    os << "# summary " << art.summary.dump() << '\n';
}

void write_json(Artifact const& art, std::ostream& os)
{
    json table{{"columns", art.columns}, {"rows", json::array()}};
    for (auto const& row : art.rows)
        table["rows"].push_back(row);
    json doc{{"metadata", art.metadata},
             {"summary", art.summary},
             {"table", std::move(table)}};
    os << doc.dump(2) << '\n';
}

//---------------------------------------------------------------------------//
// SUBCOMMANDS
//---------------------------------------------------------------------------//
//! Attach the failing grid point to a numeric error
template<class F>
void at_point(std::string const& what, double where, F&& f)
{
    try
    {
        f();
    }
    catch (ConvergenceError const& e)
    {
        throw ConvergenceError(what + " = " + exact(where) + ": " + e.what());
    }
    catch (EvaluationError const& e)
    {
        throw EvaluationError(what + " = " + exact(where) + ": " + e.what());
    }
}

void run_purity(RunConfig const& cfg, Artifact& art)
{
    double const lo = cfg.real("z_min");
    double const hi = cfg.real("z_max");
    std::size_t const n = cfg.integer("points");
    std::vector<double> z(n), value(n);
    parallel_for(n, cfg.threads, [&](std::size_t i) {
        double const frac = static_cast<double>(i) / (n - 1);
        z[i] = (i + 1 == n) ? hi : lo * std::pow(hi / lo, frac);
        at_point("z", z[i], [&] { value[i] = purity(z[i]); });
    });
    art.metadata["tolerances"] = to_json(QuadratureSpec{});
    art.columns = {"z", "purity", "purity_over_z3"};
    for (std::size_t i = 0; i < n; ++i)
    {
        double const z3 = z[i] * z[i] * z[i];
        art.rows.push_back({z[i], value[i], value[i] / z3});
    }
    art.summary["small_z_coefficient"] = value.front() / (lo * lo * lo);
    art.summary["small_z_reference"]
        = 33 / (16 * std::sqrt(std::numbers::pi));
    art.summary["purity_at_z_max"] = value.back();
}

void run_momentum(RunConfig const& cfg, Artifact& art)
{
    double const z0 = cfg.real("z0");
    double const q_max = cfg.real("q_max");
    std::size_t const n = cfg.integer("points");
    auto const kernel = make_kernel(cfg.text("kernel"));
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = q_max * i / (n - 1);
    auto dist = momentum_distribution(grid, z0, kernel, cfg.threads);

    art.metadata["tolerances"] = to_json(QuadratureSpec{});
    art.columns = {"q", "density", "gaussian_limit", "electron_limit"};
    for (std::size_t i = 0; i < n; ++i)
    {
        art.rows.push_back({grid[i],
                            dist.values[i],
                            gaussian_limit(grid[i], 1 / z0),
                            electron_limit(grid[i])});
    }
    art.summary["z0"] = z0;
    art.summary["density_at_zero"] = dist.values.front();
    art.summary["normalization"] = momentum_normalization(z0, kernel);
    art.summary["half_width"] = momentum_half_width(z0, kernel);
}

void run_twoslit(RunConfig const& cfg, Artifact& art)
{
    auto const config = make_twoslit(cfg);
    auto const packet = config.packet1();
    double const tau = packet.spread(config.t0);
    double period = std::numeric_limits<double>::infinity();
    if (tau > 0)
        period = fringe_period(config);
    double half = cfg.real("half_extent_ab");
    if (half == 0)
        half = std::isfinite(period) ? period / 2 : 3 * packet.width(config.t0);

    auto scan = screen_scan(config, half, cfg.integer("points"), cfg.threads);
    double residual = 0;
    Vec3 const c1 = packet.center(config.t0);
    Vec3 const c2 = config.packet2().center(config.t0);
    Vec3 const mid = 0.5 * (c1 + c2);
    Vec3 axis = config.slit1 - config.slit2;
    axis = (1 / norm(axis)) * axis;
    for (std::size_t i = 0; i < scan.coordinate.size(); ++i)
    {
        art.rows.push_back(
            {scan.coordinate[i], scan.coherent[i], scan.decohered[i]});
        double const cross
            = interference_term(config, mid + scan.coordinate[i] * axis);
        residual = std::max(
            residual,
            std::abs(scan.coherent[i] - scan.decohered[i] - cross));
    }
    art.columns = {"screen_coordinate", "coherent_P", "decohered_P"};

    ScatteringConfig defaults;
    auto report = check_conditions(defaults, packet, cfg.constants);
    art.metadata["conditions"]
        = json{{"born_oppenheimer", to_json(report.born_oppenheimer)},
               {"almost_diagonal", to_json(report.almost_diagonal)}};
    art.metadata["tolerances"] = json{{"identity_check", 1e-10}};

    art.summary["visibility_coherent"] = visibility(scan.coherent);
    art.summary["visibility_decohered"] = visibility(scan.decohered);
    art.summary["fringe_period_ab"] = std::isfinite(period) ? json(period)
                                                            : json(nullptr);
    art.summary["half_extent_ab"] = half;
    art.summary["t0"] = config.t0;
    art.summary["spread"] = tau;
    art.summary["schmidt_overlap"] = schmidt_overlap(config);
    art.summary["max_identity_residual"] = residual;
}

void run_xsection(RunConfig const& cfg, Artifact& art)
{
    auto const config = make_scattering(cfg);
    auto const method = parse_scan_method(cfg.text("method"));
    auto const report
        = check_conditions(config, helium_packet(cfg), cfg.constants);
    auto table = angular_scan(config,
                              cfg.integer("points"),
                              method,
                              cfg.constants,
                              cfg.threads);

    art.metadata["tolerances"] = to_json(scattering_spec());
    art.metadata["conditions"] = to_json(report);
    art.columns = {"theta_rad",
                   "dsigma_numeric",
                   "dsigma_asymptotic",
                   "anomalous_fraction"};
    double max_dev = 0;
    for (std::size_t i = 0; i < table.theta_grid.size(); ++i)
    {
        art.rows.push_back({table.theta_grid[i],
                            real_cell(table.dsigma_numeric[i]),
                            real_cell(table.dsigma_asymptotic[i]),
                            table.anomalous_fraction[i]});
        double const dev = std::abs(table.dsigma_numeric[i]
                                        / table.dsigma_asymptotic[i]
                                    - 1);
        if (std::isfinite(dev))
            max_dev = std::max(max_dev, dev);
    }
    double const q2 = table.q * table.q;
    art.summary["q"] = table.q;
    art.summary["h0_over_q2"] = h_theta(0) / q2;
    art.summary["hpi_over_q2"] = h_theta(std::numbers::pi) / q2;
    art.summary["conditions"] = to_json(report);
    if (method == ScanMethod::both)
        art.summary["max_relative_deviation"] = max_dev;
    art.summary["method"] = to_string(method);
    json failures = json::array();
    for (auto const& f : table.failures)
    {
        failures.push_back({{"theta_rad", f.theta}, {"message", f.message}});
        art.failures.push_back("theta_rad = " + exact(f.theta) + ": "
                               + f.message);
    }
    art.summary["failures"] = std::move(failures);
}

void run_conditions(RunConfig const& cfg, Artifact& art)
{
    auto const config = make_scattering(cfg);
    auto const report
        = check_conditions(config, helium_packet(cfg), cfg.constants);
    art.metadata["tolerances"] = json::object();
    art.metadata["conditions"] = to_json(report);
    art.columns = {"condition", "value", "threshold", "margin", "satisfied"};
    auto add = [&](char const* name, ConditionMargin const& m) {
        art.rows.push_back(
            {json(name), m.value, m.threshold, m.margin, m.satisfied});
    };
    add("born_oppenheimer", report.born_oppenheimer);
    add("almost_diagonal", report.almost_diagonal);
    add("observability", report.observability);
    art.summary = to_json(report);
    art.summary["electron_velocity_scale"]
        = electron_velocity_scale(cfg.constants);
    art.summary["proton_velocity_scale"]
        = proton_velocity_scale(cfg.constants);
}

//---------------------------------------------------------------------------//
//! Build a CLI11 parser whose options write raw text into \c raw
struct Parser
{
    CLI::App app{"Decoherence of atomic center-of-mass motion"};
    std::map<std::string, std::map<std::string, std::string>> raw;
    std::map<std::string, std::string> common;
    std::string config_file;

    Parser()
    {
        app.require_subcommand(1);
        app.set_help_all_flag("--help-all", "Show help for all subcommands");
        for (auto cmd : all_subcommands)
        {
            auto const name = to_string(cmd);
            auto* sub = app.add_subcommand(name, describe(cmd));
            auto& values = raw[name];
            for (auto const& info : parameter_table(cmd))
            {
                std::string help = info.description;
                if (!info.unit.empty() && info.unit != "1")
                    help += " [" + info.unit + "]";
                help += " (default " + info.default_value + ")";
                sub->add_option("--" + dashed(info.key), values[info.key], help)
                    ->allow_extra_args(false);
            }
            sub->add_option("--threads", common["threads"], "worker threads");
            sub->add_option("--format", common["format"], "csv or json");
            sub->add_option("-o,--output", common["output"], "output file");
            sub->add_option("--config", config_file, "key=value config file");
        }
    }

    static std::string describe(Subcommand cmd)
    {
        switch (cmd)
        {
            case Subcommand::purity:
                return "Purity of the nucleus reduced density vs z";
            case Subcommand::momentum:
                return "Radial momentum distribution of the nucleus";
            case Subcommand::twoslit:
                return "Two-slit screen patterns with and without ionization";
            case Subcommand::xsection:
                return "Neutron-helium differential cross-sections";
            case Subcommand::conditions:
                return "Validity margins of the scattering picture";
        }
        return {};
    }
};

}  // namespace

//---------------------------------------------------------------------------//
std::string to_string(Subcommand cmd)
{
    switch (cmd)
    {
        case Subcommand::purity:
            return "purity";
        case Subcommand::momentum:
            return "momentum";
        case Subcommand::twoslit:
            return "twoslit";
        case Subcommand::xsection:
            return "xsection";
        case Subcommand::conditions:
            return "conditions";
    }
    return {};
}

std::optional<Subcommand> parse_subcommand(std::string const& name)
{
    for (auto cmd : all_subcommands)
    {
        if (to_string(cmd) == name)
            return cmd;
    }
    return std::nullopt;
}

std::vector<ParameterInfo> const& parameter_table(Subcommand cmd)
{
    switch (cmd)
    {
        case Subcommand::purity:
            return purity_params;
        case Subcommand::momentum:
            return momentum_params;
        case Subcommand::twoslit:
            return twoslit_params;
        case Subcommand::xsection:
            return xsection_params;
        case Subcommand::conditions:
            return conditions_params;
    }
    return purity_params;
}

std::vector<std::string> valid_keys(Subcommand cmd)
{
    std::vector<std::string> keys;
    for (auto const& info : parameter_table(cmd))
        keys.push_back(info.key);
    keys.insert(keys.end(), common_keys.begin(), common_keys.end());
    auto const& constants = PhysicalConstants::override_keys();
    keys.insert(keys.end(), constants.begin(), constants.end());
    return keys;
}

std::string version()
{
    return DECOH_VERSION;
}

//---------------------------------------------------------------------------//
double RunConfig::real(std::string const& key) const
{
    auto iter = parameters.find(key);
    if (iter == parameters.end())
        throw UsageError("missing parameter '" + key + "'");
    auto value = to_real(iter->second);
    if (!value)
        throw UsageError(key + ": expected a number, got '" + iter->second
                         + "'");
    return *value;
}

long RunConfig::integer(std::string const& key) const
{
    auto iter = parameters.find(key);
    if (iter == parameters.end())
        throw UsageError("missing parameter '" + key + "'");
    auto value = to_integer(iter->second);
    if (!value)
        throw UsageError(key + ": expected an integer, got '" + iter->second
                         + "'");
    return *value;
}

std::string const& RunConfig::text(std::string const& key) const
{
    auto iter = parameters.find(key);
    if (iter == parameters.end())
        throw UsageError("missing parameter '" + key + "'");
    return iter->second;
}

//---------------------------------------------------------------------------//
std::optional<std::string> config_path(std::vector<std::string> const& args)
{
    for (std::size_t i = 0; i < args.size(); ++i)
    {
        if (args[i] == "--config" && i + 1 < args.size())
            return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0)
            return args[i].substr(9);
    }
    return std::nullopt;
}

RunConfig parse_config(std::vector<std::string> const& args,
                       std::optional<std::string> const& file_contents)
{
    Parser parser;
    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        parser.app.parse(reversed);
    }
    catch (CLI::CallForHelp const&)
    {
        throw HelpRequested(usage());
    }
    catch (CLI::CallForAllHelp const&)
    {
        throw HelpRequested(usage());
    }
    catch (CLI::ExtrasError const& e)
    {
        std::string msg = e.what();
        for (auto cmd : all_subcommands)
        {
            if (parser.app.got_subcommand(to_string(cmd)))
            {
                msg += "; valid keys for " + to_string(cmd) + ": "
                       + join(valid_keys(cmd));
            }
        }
        throw UsageError(msg);
    }
    catch (CLI::ParseError const& e)
    {
        throw UsageError(e.what());
    }

    RunConfig cfg;
    for (auto cmd : all_subcommands)
    {
        if (parser.app.got_subcommand(to_string(cmd)))
            cfg.subcommand = cmd;
    }
    std::string const name = to_string(cfg.subcommand);
    auto* sub = parser.app.get_subcommand(name);

    // Merge: defaults, then file, then flags
    std::map<std::string, std::string> merged;
    std::map<std::string, std::string> common;
    if (file_contents)
    {
        std::istringstream lines(*file_contents);
        std::string line;
        int lineno = 0;
        while (std::getline(lines, line))
        {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            auto eq = line.find('=');
            std::string key = eq == std::string::npos
                                  ? std::string{}
                                  : underscored(trim(line.substr(0, eq)));
            if (key.empty())
            {
                throw UsageError("config line " + std::to_string(lineno)
                                 + ": expected key=value, got '" + line
                                 + "'");
            }
            std::string value = trim(line.substr(eq + 1));
            if (is_constant_key(key))
            {
                auto v = to_real(value);
                if (!v)
                {
                    throw UsageError("config line " + std::to_string(lineno)
                                     + ": " + key
                                     + ": expected a number (SI units), got '"
                                     + value + "'");
                }
                cfg.constant_overrides[key] = *v;
            }
            else if (is_common_key(key))
            {
                common[key] = value;
            }
            else if (find_param(cfg.subcommand, key))
            {
                merged[key] = value;
            }
            else
            {
                throw UsageError("config line " + std::to_string(lineno)
                                 + ": unknown key '" + key + "' for "
                                 + name + "; valid keys: "
                                 + join(valid_keys(cfg.subcommand)));
            }
        }
    }
    for (auto const& info : parameter_table(cfg.subcommand))
    {
        if (sub->get_option("--" + dashed(info.key))->count() > 0)
            merged[info.key] = parser.raw[name][info.key];
    }
    for (auto const& key : common_keys)
    {
        if (sub->get_option("--" + key)->count() > 0)
            common[key] = parser.common[key];
    }

    for (auto const& info : parameter_table(cfg.subcommand))
    {
        auto iter = merged.find(info.key);
        std::string const raw = iter == merged.end() ? info.default_value
                                                     : iter->second;
        cfg.parameters[info.key] = canonical(info, raw);
    }

    if (auto iter = common.find("threads"); iter != common.end())
    {
        auto v = to_integer(iter->second);
        if (!v || *v < 1)
        {
            throw UsageError("threads: expected a positive integer, got '"
                             + iter->second + "'");
        }
        cfg.threads = static_cast<int>(*v);
    }
    if (auto iter = common.find("format"); iter != common.end())
    {
        if (iter->second == "csv")
            cfg.format = OutputFormat::csv;
        else if (iter->second == "json")
            cfg.format = OutputFormat::json;
        else
            throw UsageError("format must be csv or json, got '"
                             + iter->second + "'");
    }
    if (auto iter = common.find("output"); iter != common.end())
        cfg.output_path = iter->second;

    try
    {
        cfg.constants = PhysicalConstants::codata().with_overrides(
            cfg.constant_overrides);
        validate(cfg);
    }
    catch (DomainError const& e)
    {
        throw UsageError(name + ": " + e.what());
    }
    return cfg;
}

//---------------------------------------------------------------------------//
std::string usage()
{
    std::ostringstream os;
    os << "usage: decoh <subcommand> [--key value ...] [--config FILE]\n"
          "       [--threads N] [--format csv|json] [--output PATH]\n\n"
          "Config files hold key=value lines; '#' starts a comment. Flags\n"
          "override file entries. Physical constants (SI) may be set in the\n"
          "file: "
       << join(PhysicalConstants::override_keys()) << "\n";
    for (auto cmd : all_subcommands)
    {
        os << '\n' << to_string(cmd) << ": " << Parser::describe(cmd) << '\n';
        for (auto const& info : parameter_table(cmd))
        {
            os << "  --" << dashed(info.key);
            os << std::string(
                std::max<std::size_t>(2, 20 - info.key.size()), ' ');
            os << info.description;
            if (!info.unit.empty() && info.unit != "1")
                os << " [" << info.unit << "]";
            os << " (default " << info.default_value << ")\n";
        }
    }
    os << "\nexit status: 0 success, 1 usage, 2 numeric failure, 3 I/O\n";
    return os.str();
}

int run(RunConfig const& config, std::ostream& out, std::ostream& err)
{
    Artifact art;
    art.metadata["tool"] = "decoh";
    art.metadata["version"] = version();
    art.metadata["generated"] = timestamp();
    art.metadata["subcommand"] = to_string(config.subcommand);
    art.metadata["parameters"] = json(config.parameters);
    art.metadata["constants"] = constants_json(config.constants);
    try
    {
        switch (config.subcommand)
        {
            case Subcommand::purity:
                run_purity(config, art);
                break;
            case Subcommand::momentum:
                run_momentum(config, art);
                break;
            case Subcommand::twoslit:
                run_twoslit(config, art);
                break;
            case Subcommand::xsection:
                run_xsection(config, art);
                break;
            case Subcommand::conditions:
                run_conditions(config, art);
                break;
        }
    }
    catch (ConvergenceError const& e)
    {
        err << "decoh: numeric failure: " << e.what() << '\n';
        return 2;
    }
    catch (EvaluationError const& e)
    {
        err << "decoh: numeric failure: " << e.what() << '\n';
        return 2;
    }
    catch (DomainError const& e)
    {
        err << "decoh: numeric failure: " << e.what() << '\n';
        return 2;
    }

    if (config.format == OutputFormat::csv)
        write_csv(art, config, out);
    else
        write_json(art, out);
    out.flush();
    if (!out)
    {
        err << "decoh: failed to write output\n";
        return 3;
    }
    for (auto const& failure : art.failures)
        err << "decoh: numeric failure at " << failure << '\n';
    return art.failures.empty() ? 0 : 2;
}

int run(RunConfig const& config, std::ostream& err)
{
    if (config.output_path.empty())
        return run(config, std::cout, err);
    std::ofstream file(config.output_path);
    if (!file)
    {
        err << "decoh: cannot open '" << config.output_path
            << "' for writing\n";
        return 3;
    }
    return run(config, file, err);
}

int main_entry(std::vector<std::string> const& args,
               std::ostream& out,
               std::ostream& err)
{
    std::optional<std::string> contents;
    if (auto path = config_path(args))
    {
        std::ifstream file(*path);
        if (!file)
        {
            err << "decoh: cannot read config file '" << *path << "'\n";
            return 3;
        }
        std::ostringstream buf;
        buf << file.rdbuf();
        contents = buf.str();
    }

    RunConfig config;
    try
    {
        config = parse_config(args, contents);
    }
    catch (HelpRequested const& help)
    {
        out << help.what();
        return 0;
    }
    catch (UsageError const& e)
    {
        err << "decoh: " << e.what() << "\n(run 'decoh --help' for usage)\n";
        return 1;
    }
    if (config.output_path.empty())
        return run(config, out, err);
    return run(config, err);
}

//---------------------------------------------------------------------------//
}  // namespace decoh
