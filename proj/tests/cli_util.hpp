// Helpers for driving the `ep` binary from tests.
#ifndef EP_TESTS_CLI_UTIL_HPP
#define EP_TESTS_CLI_UTIL_HPP

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace cliutil {

struct CmdResult {
    int exit_code = -1;
    std::string output; // stdout and stderr interleaved
};

/// Runs `binary args...` through the shell, capturing combined output.
inline CmdResult run(const std::string& binary, const std::string& args) {
    const std::string cmd = binary + " " + args + " 2>&1";
    CmdResult result;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return result;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, got);
    const int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace cliutil

#endif
