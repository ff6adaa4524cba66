#ifndef DSTPROT_TOOLS_COMMANDS_HPP
#define DSTPROT_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dstprot/dst_sim.hpp"

namespace dstprot::cli {

inline constexpr const char* kVersion = "1.0.0";

// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInconsistent = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Fields = std::vector<std::pair<std::string, std::string>>;

// One command invocation: its parameters, a table of result rows (every
// cell a string; exact rationals as "p/q") and run metadata.
struct OutputRecord {
    std::string command;
    Fields parameters;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    Fields metadata;
};

enum class Format { CSV, JSON };

void write_csv(const OutputRecord& record, std::ostream& out);
void write_json(const OutputRecord& record, std::ostream& out);
void write(const OutputRecord& record, Format format, std::ostream& out);

struct CommandResult {
    OutputRecord record;
    int exit_code = kExitOk;
};

enum class ExactMethod { RECURSION, CLOSED_FORM, BOTH };

inline constexpr int kDefaultDigits = 30;
inline constexpr int kDefaultNCap = 2000;
inline constexpr int kRatioDigits = 15;
inline constexpr int kFloatDigits = 15;  // significant digits for Monte Carlo moments

CommandResult cmd_exact(int n, ExactMethod method, int n_cap = kDefaultNCap);
CommandResult cmd_constant(int digits);

struct SimulateOptions {
    int n = 0;
    std::int64_t trials = 10000;
    std::uint64_t seed = 1;
    std::string statistic = "protected2";
    unsigned threads = 1;
    RandomMode mode = RandomMode::SPLIT;
    int n_cap = kDefaultNCap;  // exact reference only up to this n
};
CommandResult cmd_simulate(const SimulateOptions& options);

struct CompareOptions {
    std::vector<int> ns;
    std::int64_t trials = 10000;
    std::uint64_t seed = 1;
    int digits = kDefaultDigits;
    unsigned threads = 1;
    int n_cap = kDefaultNCap;
};
CommandResult cmd_compare(const CompareOptions& options);

CommandResult cmd_build(const std::string& path, int k);

// "protected2", "protected5", "leaves".
Statistic parse_statistic(const std::string& text);

// Full command-line entry point; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dstprot::cli

#endif  // DSTPROT_TOOLS_COMMANDS_HPP
