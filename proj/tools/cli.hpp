#ifndef BFMIX_TOOLS_CLI_HPP
#define BFMIX_TOOLS_CLI_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bfmix/rational.hpp"

namespace bfmix::cli {

struct RunConfig {
    std::string command;    // analyze | verify | series | sweep
    std::string selector;   // case1..3, prop1|prop2|separatrix, wp|qbar|ve1|mu2|mu3
    std::map<std::string, std::string> given;   // flag -> raw text, for the report

    Rational omega0 = 1, omega = 0, gbf = 0, csum = 0, c0sq = 0, h = 0, omega1 = 0, c1sq = 0;
    std::vector<Rational> omegaj, cjsq, hj, gbf_list;
    int nf = 1;
    int order = 16;
    double action = 0, t0_min = 0, t0_max = 0, t0 = 0;
    int t0_samples = 64;
    int component = 1;                 // series: 0 tangential, j normal[j]
    std::optional<std::string> row;    // series: first | second
    bool float_mode = false;           // some parameter was a decimal
    std::string json_path, csv_path;
    bool help = false;
    std::string help_text;
};

// Throws Error(ErrorKind::usage) on unknown flags, missing flags or malformed numbers.
RunConfig parse_args(int argc, const char* const* argv);

// Runs the command; exit 0 on a completed analysis, 2 on invalid input,
// 3 on an internal verification failure.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}

#endif
