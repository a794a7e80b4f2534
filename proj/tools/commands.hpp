#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tracekc::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kValidationFailure = 3 };

inline constexpr const char* kVersion = "0.1.0";

struct EnvOptions {
    std::optional<double> straight_rate;
    std::optional<double> left_rate;
    bool fixed_rates = false;  // disable per-episode random rate scaling
};

struct SimulateOptions {
    int episodes = 1;
    std::size_t depth = 1;
    std::uint64_t seed = 1;
    int duration = 5400;
    std::filesystem::path out;
    std::string policy = "heuristic";  // heuristic | always:<PHASE> | path to policy.json
    EnvOptions env;
};

struct TrainOptions {
    int episodes = 100;
    std::size_t depth = 1;
    std::uint64_t seed = 1;
    int duration = 5400;
    std::filesystem::path out;      // policy.json
    std::filesystem::path rewards;  // defaults to <out stem>.rewards.csv
    EnvOptions env;
};

struct CompileOptions {
    std::filesystem::path traces;
    std::filesystem::path cnf;  // DIMACS input instead of traces
    std::filesystem::path out;
    std::filesystem::path dimacs_out;
    bool stats = false;
    bool no_cache = false;
};

struct QueryOptions {
    std::filesystem::path theory;
    std::string evidence;
    std::string target = "actions";  // actions | state | var:<name>
    bool pretty = false;
};

struct ValidateOptions {
    std::filesystem::path theory;
};

struct DemoOptions {
    std::filesystem::path out_dir;
};

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_train(const TrainOptions& opts, std::ostream& out, std::ostream& err);
int cmd_compile(const CompileOptions& opts, std::ostream& out, std::ostream& err);
int cmd_query(const QueryOptions& opts, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_demo(const DemoOptions& opts, std::ostream& out, std::ostream& err);

// Parses argv (argv[0] is the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// FNV-1a 64 of a file, as 16 hex digits.
std::string content_hash(const std::filesystem::path& path);

}  // namespace tracekc::cli
