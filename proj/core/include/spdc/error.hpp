#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

/// Input outside a physical validity range (wavelength, temperature, ...).
/// The message names the violated bound.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

/// Configuration or file contents violating an invariant.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical procedure failed (no bracket, no convergence, degenerate data).
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Curve or map analysis cannot proceed (flat/empty input, undersampling).
class AnalysisError : public std::runtime_error {
public:
  explicit AnalysisError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace spdc
