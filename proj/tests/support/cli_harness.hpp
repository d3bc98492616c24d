#pragma once

// Runs the mlg executable for golden-file comparisons. Set MLG_UPDATE_GOLDEN=1
// to rewrite the expected reports after an intentional output change.

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace cli_harness {

struct Case {
    std::string name;
    std::string args;
    int exitCode;
};

inline void PrintTo(const Case& c, std::ostream* os) { *os << c.name; }

struct Outcome {
    int exitCode = -1;
    std::string out;
    std::string err;
};

/// Runs mlg from the source root with MLG_THREADS set, capturing both streams.
Outcome runMlg(const std::string& args, int threads);

/// Report with the wall-time field removed, or the error text for failed runs.
std::string normalized(const Outcome& r);

/// Every golden case: fixtures x commands, Lewy modes, definition files, errors.
std::vector<Case> cases();

std::filesystem::path goldenPath(const Case& c);
std::string slurp(const std::filesystem::path& p);
bool updating();

}  // namespace cli_harness
