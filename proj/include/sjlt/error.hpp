#pragma once

#include <stdexcept>
#include <string>

namespace sjlt {

// Invalid parameters or configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A configuration that would exceed a resource cap.
struct ResourceError : ConfigError {
    explicit ResourceError(const std::string& what) : ConfigError(what) {}
};

// File read/write failure (CLI exit code 3).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or out-of-range data: bad keys, dimension mismatch,
// non-finite samples (CLI exit code 4).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sjlt
