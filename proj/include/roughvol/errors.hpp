#pragma once
#include <stdexcept>
#include <string>

namespace roughvol {

// Error taxonomy mirrors the CLI exit codes: validation (1), data (2),
// numeric (3).

class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace roughvol
