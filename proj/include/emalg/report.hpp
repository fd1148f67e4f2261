#ifndef EMALG_REPORT_HPP
#define EMALG_REPORT_HPP

#include "emalg/config.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace emalg {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::optional<int> depth;
    std::optional<std::pair<int, int>> window;
    std::optional<unsigned long> seed;
    std::vector<std::string> points;
    std::string config_name;  // as echoed in the report
};

// Dual-form report: aligned text and a JSON record document with the same content.
struct Report {
    std::string text;
    std::string records;
};

const std::vector<std::string>& command_names();
// UsageError for unknown commands or missing flags; other exceptions propagate
Report run_command(const Session& S, const std::string& command, const RunOptions& opt);
// machine-readable error record for an exception escaping load or run
std::string error_record(const std::string& command, const std::exception& e);
int exit_code_for(const std::exception& e);

}  // namespace emalg

#endif
