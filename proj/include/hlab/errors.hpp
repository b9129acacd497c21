#pragma once
// Error taxonomy shared across modules. The CLI maps these onto exit codes:
// config_error -> 2, window_exhausted -> 3, anything else -> 4.

#include <stdexcept>
#include <string>

namespace hlab {

struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct domain_violation : std::runtime_error {
    explicit domain_violation(const std::string& msg) : std::runtime_error(msg) {}
};

struct window_exhausted : std::runtime_error {
    explicit window_exhausted(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace hlab
