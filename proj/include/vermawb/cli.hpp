#pragma once

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace vwb::cli {

/// Malformed or missing parameters; maps to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitUnknown = 3;
inline constexpr std::size_t kMaxSymbolic = 3;

struct Job {
    std::string command;
    /// Raw option values keyed by long option name ("c", "p", "alpha", ...).
    std::map<std::string, std::string> params;
    std::vector<std::string> symbolic;
};

struct Report {
    std::string command;
    nlohmann::json job;
    nlohmann::json results;
    std::vector<std::string> notes;
    double timingMs = 0;
    int exitCode = kExitOk;

    /// Timing is not compared.
    bool operator==(const Report& o) const;
};

Report run(const Job& job);

nlohmann::json toJson(const Report& r, bool withTiming = true);
Report fromJson(const nlohmann::json& j);

/// format: json | text | latex.
std::string emit(const Report& r, const std::string& format, bool withTiming = true);

/// Full command line entry point; returns the exit code.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace vwb::cli
