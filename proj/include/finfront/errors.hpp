#pragma once
#include <stdexcept>
#include <string>

namespace finfront {

// Error hierarchy shared by the library and the CLI. The exit codes are part
// of the command-line contract: 0 success, 2 validation, 3 numerical,
// 4 geometry (convexity/orthogonality), 5 degenerate front.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
    virtual int exit_code() const { return 1; }
};

// Bad scenario input, inadmissible parameters, configuration limits.
class validation_error : public error {
public:
    using error::error;
    int exit_code() const override { return 2; }
};

// Non-finite values, singular/ill-conditioned tensors, solver breakdown.
class numerical_error : public error {
public:
    using error::error;
    int exit_code() const override { return 3; }
};

// Convexity violations, orthogonality root-count failures.
class geometry_error : public error {
public:
    using error::error;
    int exit_code() const override { return 4; }
};

// Too few surviving trajectories to form a closed front.
class degenerate_front_error : public error {
public:
    using error::error;
    int exit_code() const override { return 5; }
};

} // namespace finfront
