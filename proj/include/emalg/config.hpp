#ifndef EMALG_CONFIG_HPP
#define EMALG_CONFIG_HPP

#include "emalg/classify.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace emalg {

// Config failure with the source position of the offending node (0 when unknown).
// kind is "parse" for TOML syntax errors and "semantic" for failed invariants.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string kind, const std::string& msg, int line = 0, int column = 0)
        : std::runtime_error(msg), kind(std::move(kind)), line(line), column(column) {}
    std::string kind;
    int line, column;
};

struct WindowSpec {
    int lo = -2, hi = 2;
    int depth = 0;  // 0: twice the target norm
};

// One config = one session: (g, Gamma, X, actions, window) plus optional
// representation data for the commands that consume it.
struct Session {
    std::string name;
    std::string origin;  // file path or "<text>"
    std::string digest;  // FNV-1a of the config bytes, 16 hex digits
    int conductor = 1;   // after lifting to the bundle's conductor
    unsigned long seed = 0;
    std::shared_ptr<const GroupActionBundle> bundle;
    WindowSpec window;
    bool has_window = false;

    std::vector<std::pair<Point, RepLabel>> psi, phi;  // raw entries
    std::optional<DrinfeldTuple> drinfeld;
    std::vector<Point> injectivity_points;
    std::vector<RepLabel> injectivity_labels;
    std::vector<Point> points;  // default points for orbit / stabilizer
};

Session load_session(const std::string& path);
Session parse_session(const std::string& text, const std::string& origin = "<text>");

// "p/q", "cyc(N)[...]" or "zeta(N)", "zeta(N)^k", "-zeta(N)^k"
Scalar parse_config_scalar(const std::string& text);
// "2", "0,0" or "(0, 0)"; DomainError when the point is not in X
Point parse_point_text(const GradedRing& R, const std::string& text);
// matrices as rows of scalar text forms, one matrix per blank-line separated block
std::vector<Matrix> parse_matrix_blocks(const std::string& text);

// non-rational entries rewritten in the session conductor
Point lift_point(const Point& x, int conductor);
RepLabel lift_label(const RepLabel& l, int conductor);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace emalg

#endif
