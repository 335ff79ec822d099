#ifndef BIKEVOL_ERRORS_HPP
#define BIKEVOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bikevol {

// Bad config / bad arguments.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data; message carries a locator
// (file, line or feature index) where one exists.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace bikevol

#endif
