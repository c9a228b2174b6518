//---------------------------------------------------------------------------//
//! \file decoh/cli.hpp
//! Command-line front end: configuration parsing and subcommand dispatch.
//---------------------------------------------------------------------------//
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "units.hpp"

namespace decoh
{
//---------------------------------------------------------------------------//
//! Bad command line or config file (exit status 1)
class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Failure to read or write a file (exit status 3)
class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Help was requested; carries the text to print (exit status 0)
class HelpRequested : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class Subcommand
{
    purity,
    momentum,
    twoslit,
    xsection,
    conditions
};

enum class OutputFormat
{
    csv,
    json
};

std::string to_string(Subcommand cmd);
std::optional<Subcommand> parse_subcommand(std::string const& name);

//---------------------------------------------------------------------------//
//! Documented subcommand parameter
struct ParameterInfo
{
    enum class Kind
    {
        real,
        integer,
        text
    };

    std::string key;
    Kind kind{Kind::real};
    std::string default_value;
    std::string unit;
    std::string description;
};

// Parameters accepted by a subcommand (excluding constants and common keys)
std::vector<ParameterInfo> const& parameter_table(Subcommand cmd);

// Every key a config file may set for this subcommand
std::vector<std::string> valid_keys(Subcommand cmd);

//---------------------------------------------------------------------------//
/*!
 * Fully typed and validated run description.
 *
 * \c parameters holds every subcommand parameter (defaults filled in) as
 * its canonical text; use \c real, \c integer and \c text for typed access.
 */
struct RunConfig
{
    Subcommand subcommand{Subcommand::purity};
    std::map<std::string, std::string> parameters;
    std::map<std::string, double> constant_overrides;
    PhysicalConstants constants;
    std::string output_path;  //!< empty for standard output
    OutputFormat format{OutputFormat::csv};
    int threads{1};

    double real(std::string const& key) const;
    long integer(std::string const& key) const;
    std::string const& text(std::string const& key) const;
};

// Path given with --config, if any
std::optional<std::string> config_path(std::vector<std::string> const& args);

/*!
 * Build a run configuration from arguments (without the program name) and
 * the optional contents of a key=value config file. Flags win over file
 * entries. Throws UsageError.
 */
RunConfig parse_config(std::vector<std::string> const& args,
                       std::optional<std::string> const& file_contents);

// Usage text listing subcommands and their parameters
std::string usage();

/*!
 * Execute a configuration, writing the artifact to \c out.
 *
 * Diagnostics go to \c err. Returns the process exit status:
 * 0 success, 2 numeric failure, 3 I/O failure.
 */
int run(RunConfig const& config, std::ostream& out, std::ostream& err);

// Execute a configuration, writing to its output path (or \c out)
int run(RunConfig const& config, std::ostream& err);

// Full command-line entry point returning the exit status
int main_entry(std::vector<std::string> const& args,
               std::ostream& out,
               std::ostream& err);

// Tool version string
std::string version();

//---------------------------------------------------------------------------//
}  // namespace decoh
