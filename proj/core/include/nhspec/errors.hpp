#pragma once

#include <stdexcept>
#include <string>

namespace nhspec {

// Every failure raised by the toolkit derives from Error and carries a stable
// machine-readable kind, which the CLI copies into its error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class InvalidCutoffError : public Error {
 public:
  explicit InvalidCutoffError(const std::string& what) : Error("invalid_cutoff", what) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error("shape", what) {}
};

class IndexError : public Error {
 public:
  explicit IndexError(const std::string& what) : Error("index", what) {}
};

class InvalidOperatorError : public Error {
 public:
  explicit InvalidOperatorError(const std::string& what) : Error("invalid_operator", what) {}
};

class NoSymmetryError : public Error {
 public:
  explicit NoSymmetryError(const std::string& what) : Error("no_symmetry", what) {}
};

class ConditioningError : public Error {
 public:
  explicit ConditioningError(const std::string& what) : Error("conditioning", what) {}
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error("unsupported", what) {}
};

class SignAmbiguityError : public Error {
 public:
  explicit SignAmbiguityError(const std::string& what) : Error("sign_ambiguity", what) {}
};

class RangeError : public Error {
 public:
  RangeError(const std::string& what, double safe_bound)
      : Error("range", what), safe_bound_(safe_bound) {}

  /// Largest |t| (or tau) for which the evolution stays representable.
  double safe_bound() const noexcept { return safe_bound_; }

 private:
  double safe_bound_;
};

class ResolutionError : public Error {
 public:
  explicit ResolutionError(const std::string& what) : Error("resolution", what) {}
};

class ConstraintError : public Error {
 public:
  explicit ConstraintError(const std::string& what) : Error("constraint", what) {}
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error("parameter", what) {}
};

}  // namespace nhspec
