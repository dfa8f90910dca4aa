#pragma once

/// @file errors.hpp
/// Exception hierarchy shared by every module of the library.

#include <stdexcept>
#include <string>

namespace bq {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Coefficients do not match the requested dispersion regime.
class RegimeError : public Error {
public:
    using Error::Error;
};

/// A symbol was evaluated where it is undefined (negative radicand, zero denominator).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A grid is incompatible with the operation (size, resolution, dimension).
class GridError : public Error {
public:
    using Error::Error;
};

/// A quadrature failed its self-convergence certificate.
class QuadratureError : public Error {
public:
    using Error::Error;
};

/// Pseudo-spectral products would alias onto retained modes.
class AliasingError : public Error {
public:
    using Error::Error;
};

/// Time integration left its stability envelope.
class BlowUpError : public Error {
public:
    using Error::Error;
};

/// Malformed experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace bq
