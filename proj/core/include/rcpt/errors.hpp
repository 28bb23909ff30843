// errors.hpp — Exception types shared by the rcpt library and CLI

#pragma once

#include <stdexcept>
#include <string>

namespace rcpt {

// Invalid physical parameters or malformed user input (CLI exit code 2).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical routine could not produce a trustworthy result (CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, double diagnostic = 0.0)
        : std::runtime_error(what), diagnostic_(diagnostic) {}

    // Routine-specific figure of merit: condition estimate, residual, ...
    double diagnostic() const noexcept { return diagnostic_; }

private:
    double diagnostic_;
};

} // namespace rcpt
