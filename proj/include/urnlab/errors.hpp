#pragma once

#include <stdexcept>
#include <string>

namespace urnlab {

/// Bad user input: config files, CLI arguments, incompatible model/law
/// combinations. CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A run hit a configured resource ceiling (oracle state budget, overflow
/// guard). CLI exit code 3.
struct RuntimeLimitError : std::runtime_error {
    explicit RuntimeLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace urnlab
