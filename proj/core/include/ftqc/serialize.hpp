#pragma once

#include <string>

#include "ftqc/circuit.hpp"

namespace ftqc {

// Line-oriented text form.  Angles and probabilities print as C hex-float
// literals so that write/parse round-trips are bit exact.
std::string circuit_to_text(const Circuit& c);
Circuit circuit_from_text(const std::string& text);  // throws on parse error

// JSON mirror of the same structure (floating point values again carried as
// hex-float strings).
std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& json_text);

}  // namespace ftqc
