#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twahss::cli {

struct RunConfig
{
    std::string command;
    std::string model, complex_path;  // one of them
    std::string cdga;                 // catalog name or JSON path
    std::string twist_path, gerbe_path;
    std::optional<long> twist_int;
    std::string twist_elem = "x3", on, potential;
    int k = 2;
    int degree = 0;
    int lambda = -1;
    std::string coeff = "Z";
    std::vector<int> pages{2, 3, 4};
    bool verify_oracle = false;
    std::string format = "table";
    std::string cache_dir;
    bool verify_cache = false;
    int verbosity = 0;
};

// Runs one command; returns the process exit code (0, or 2/3/4 for parse,
// precondition and unsupported errors, 1 for anything else).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twahss::cli
