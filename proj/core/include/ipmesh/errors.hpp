#pragma once

#include <stdexcept>
#include <string>

namespace ipmesh {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector or matrix sizes that do not fit together.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation (nonpositive monitor, c outside (0,1), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Query point outside the mesh of a non-periodic interpolant.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Finite element assembly failure (degenerate element, bad mesh).
class AssemblyError : public Error {
public:
    using Error::Error;
};

/// Nonlinear or linear solve failure. Carries the last residual norm seen.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double residual_norm = 0.0, int iterations = 0)
        : Error(what), residual_norm_(residual_norm), iterations_(iterations) {}

    double residual_norm() const noexcept { return residual_norm_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_norm_;
    int iterations_;
};

class LinearSolveError : public SolverError {
public:
    using SolverError::SolverError;
};

/// Correction or projection direction orthogonal to the discrete gradient.
class DegenerateDirectionError : public SolverError {
public:
    using SolverError::SolverError;
};

/// Integral-preserving transfer did not reach the level set.
class TransferError : public SolverError {
public:
    using SolverError::SolverError;
};

/// Error metric undefined for the given data (e.g. no unique peak).
class MetricError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace ipmesh
