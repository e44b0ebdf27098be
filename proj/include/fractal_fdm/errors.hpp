#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fractal_fdm {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A requested graph level exceeds the configured cap.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

/// A time-stepping run produced non-finite values or blew past its growth limit.
class Diverged : public NumericalError {
public:
    Diverged(const std::string& what, std::int64_t step)
        : NumericalError(what), step_(step) {}

    /// First step index at which the solution was rejected.
    std::int64_t step() const noexcept { return step_; }

private:
    std::int64_t step_;
};

}  // namespace fractal_fdm
