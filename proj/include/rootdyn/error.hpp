#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rootdyn {

enum class ErrorKind {
  invalid_parameter,
  degenerate_parameter,
  formula_undefined,
  derivative_at_pole,
  iteration_singularity,
  not_a_fixed_point,
  solver_not_converged,
  order_not_measurable,
  no_finite_antenna_bound,
  io_failure,
  format_mismatch,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid parameter";
    case ErrorKind::degenerate_parameter: return "degenerate parameter";
    case ErrorKind::formula_undefined: return "formula undefined";
    case ErrorKind::derivative_at_pole: return "derivative requested at pole";
    case ErrorKind::iteration_singularity: return "iteration singularity";
    case ErrorKind::not_a_fixed_point: return "not a fixed point";
    case ErrorKind::solver_not_converged: return "solver did not converge";
    case ErrorKind::order_not_measurable: return "order not measurable";
    case ErrorKind::no_finite_antenna_bound: return "no finite antenna bound";
    case ErrorKind::io_failure: return "I/O failure";
    case ErrorKind::format_mismatch: return "format mismatch";
  }
  return "unknown error";
}

class DynamicsError : public std::runtime_error {
 public:
  DynamicsError(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the polynomial solver; carries the last root estimates.
class SolverError : public DynamicsError {
 public:
  SolverError(const std::string& detail, std::vector<std::complex<double>> estimates)
      : DynamicsError(ErrorKind::solver_not_converged, detail), estimates_(std::move(estimates)) {}

  const std::vector<std::complex<double>>& estimates() const noexcept { return estimates_; }

 private:
  std::vector<std::complex<double>> estimates_;
};

class IoError : public DynamicsError {
 public:
  IoError(ErrorKind kind, const std::string& path, const std::string& detail)
      : DynamicsError(kind, path + ": " + detail), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace rootdyn
