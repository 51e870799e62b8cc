#pragma once

#include <stdexcept>
#include <string>

namespace gx {

// Bad experiment/game configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Bad data file: checkpoint, results, replay input (CLI exit code 3).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gx
