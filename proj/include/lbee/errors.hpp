#pragma once

#include <stdexcept>
#include <string>

namespace lbee {

// All library failures carry a stable machine-readable code next to the
// human-readable message. Validation errors map to CLI exit code 2,
// runtime errors to 3.
class error : public std::runtime_error {
public:
    error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

class validation_error : public error {
public:
    using error::error;
};

class runtime_fault : public error {
public:
    using error::error;
};

}  // namespace lbee
