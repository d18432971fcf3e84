#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homlab {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ExhaustedStream : public Error { using Error::Error; };
class OutOfDomain : public Error { using Error::Error; };
class NonpositiveCoefficient : public Error { using Error::Error; };
class DegenerateGrid : public Error { using Error::Error; };
class GridMismatch : public Error { using Error::Error; };
class NonSpdCoefficient : public Error { using Error::Error; };
class BoundsViolation : public Error { using Error::Error; };
class QueryOutsideDomain : public Error { using Error::Error; };
class ZeroReference : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };

class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, std::size_t iterations, double residual)
        : Error(what), iterations_(iterations), residual_(residual) {}

    std::size_t iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t iterations_;
    double residual_;
};

} // namespace homlab
