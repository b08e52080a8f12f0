#pragma once

#include <stdexcept>
#include <string>

#include "femtosim/engine.hpp"

namespace femtosim {

// Parse failure with the 1-based line it was detected on (0 when the
// problem is not tied to a line, e.g. an unreadable file).
class scenario_parse_error : public std::runtime_error {
public:
    scenario_parse_error(int line, const std::string& msg)
        : std::runtime_error(msg), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// Scenario text format: INI-style sections [radio], [layout], [schedule],
// [sweep], all optional, '#' comments. Unknown sections or keys, duplicate
// scalar keys, and malformed values are errors. An empty file yields the
// built-in defaults.
Scenario parse_scenario(const std::string& text);

// Canonical text form; parsing it reproduces the scenario exactly.
std::string serialize_scenario(const Scenario& sc);

// Reads, parses, and validates a scenario file. All errors are reported
// as scenario_parse_error with the path in the message.
Scenario load_scenario_file(const std::string& path);

}  // namespace femtosim
