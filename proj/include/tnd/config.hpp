#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tnd/simulate.hpp"

namespace tnd {

struct ConfigViolation {
    int line = 0; // 0 when no specific line applies (e.g. a missing key)
    std::string message;
};

// Carries every violation found, not just the first.
class ConfigParseError : public Error {
public:
    explicit ConfigParseError(std::vector<ConfigViolation> violations);

    const std::vector<ConfigViolation>& violations() const noexcept { return violations_; }

private:
    std::vector<ConfigViolation> violations_;
};

using ParsedConfig = std::variant<Scenario, SweepSpec>;

// Parses the line-oriented `key = value` scenario format (schema = 1,
// '#' comments). Presence of any axis.* key makes the result a SweepSpec.
// Throws ConfigParseError listing all schema violations with line numbers.
ParsedConfig parse_scenario_config(std::string_view text);

// Canonical serialization; parse(write(x)) == x.
std::string write_scenario_config(const Scenario& scenario);
std::string write_scenario_config(const SweepSpec& spec);
std::string write_scenario_config(const ParsedConfig& config);

} // namespace tnd
