#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tnd {

// Every failure the toolkit can produce, as a closed set so downstream
// sweeps can count outcomes by kind instead of parsing messages.
enum class ErrorKind {
    invalid_input,
    undefined_estimate,
    empty_control_group,
    non_invertible_test,
    degenerate_test,
    config_error,
    no_valid_replicates,
    io_error,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::undefined_estimate: return "undefined-estimate";
    case ErrorKind::empty_control_group: return "empty-control-group";
    case ErrorKind::non_invertible_test: return "non-invertible-test";
    case ErrorKind::degenerate_test: return "degenerate-test";
    case ErrorKind::config_error: return "config-error";
    case ErrorKind::no_valid_replicates: return "no-valid-replicates";
    case ErrorKind::io_error: return "io-error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view tag() const noexcept { return to_string(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

} // namespace tnd
