#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "barnesg/cli/result_table.hpp"
#include "barnesg/ggc.hpp"
#include "barnesg/num_core.hpp"

namespace barnesg::cli {

/// Invalid command line or parameter value; maps to exit status 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;  ///< "<group> <name>", e.g. "verify haar"
    std::vector<std::pair<std::string, std::string>> params;  ///< missing keys take defaults
    std::string format = "csv";
    std::optional<std::string> output;
    std::uint64_t seed = 0;
};

struct RunResult {
    ResultTable table;
    int exit_code = 0;  ///< 0 all pass flags true, 1 otherwise
};

struct OptionSpec {
    std::string name;
    std::string default_value;
    std::string help;
};

struct CommandSpec {
    std::string group;
    std::string name;
    std::string help;
    std::vector<OptionSpec> options;
};

const std::vector<CommandSpec>& command_specs();

/// Run one command. Throws ConfigError for unknown commands or bad values;
/// numeric failures are recorded per row.
RunResult run(const RunConfig& config);

/// Render according to config.format.
std::string render(const ResultTable& table, const std::string& format);

/// Full command-line entry point. Returns the process exit status.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Parameter parsing, exposed for tests.
std::vector<double> parse_real_grid(std::string_view text);
std::vector<long> parse_int_grid(std::string_view text);
ComplexScalar parse_complex(std::string_view text);
std::vector<ComplexScalar> parse_complex_grid(std::string_view text);
/// "w:xi,w:xi,..." atoms.
ThorinMeasure parse_measure(std::string_view text);

}  // namespace barnesg::cli
