#pragma once

#include <string>
#include <string_view>

#include "bubbles/configuration.hpp"
#include "bubbles/flow.hpp"
#include "bubbles/layout.hpp"
#include "bubbles/moves.hpp"
#include "bubbles/oracle.hpp"
#include "bubbles/solver.hpp"

namespace bubbles {

/// printf "%.17g": round-trips every double.
std::string format_double(double v);

// Emitters write keys in a fixed order so output is byte-stable.
std::string to_json(const Configuration& c);
std::string to_json(const Layout& layout);
std::string to_json(const Solution& s);
std::string to_json(const MoveReport& r);
std::string to_json(const OracleResult& r);
std::string to_json(const ConjectureReport& r);

/// Accepts a configuration object, or any object carrying one under
/// "config" (e.g. a solution file). Throws PreconditionError on bad input.
Configuration parse_configuration(std::string_view text);

/// Comma-separated list of doubles, e.g. "0.5,1,1.5".
std::vector<double> parse_double_list(std::string_view text);

std::string to_string(StopReason r);

}  // namespace bubbles
