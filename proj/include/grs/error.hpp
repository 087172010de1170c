#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace grs {

/// Base of every error raised by the library. Carries a short machine-readable
/// kind next to the human message so the CLI can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Malformed arguments: duplicate vertices, unknown endpoints, bad flags.
class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& m) : Error("invalid-input", m) {}
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& m) : Error("precondition", m) {}
};

/// Not enough stable coding vertices in the simulated horizon.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& m, std::size_t more_stages)
      : Error("capacity", m), more_stages_(more_stages) {}

  std::size_t more_stages_needed() const noexcept { return more_stages_; }

 private:
  std::size_t more_stages_;
};

/// A decode context whose embedding does not validate against the host.
class InvalidContext : public Error {
 public:
  explicit InvalidContext(const std::string& m) : Error("invalid-context", m) {}
};

/// A witness extraction step could not produce a valid object.
class ExtractionFailure : public Error {
 public:
  ExtractionFailure(const std::string& m, std::vector<std::size_t> witness = {})
      : Error("extraction-failure", m), witness_(std::move(witness)) {}

  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  std::vector<std::size_t> witness_;
};

/// Generators whose closure misses part of the lattice.
class CoverageError : public Error {
 public:
  CoverageError(const std::string& m, std::vector<std::size_t> unreached)
      : Error("coverage", m), unreached_(std::move(unreached)) {}

  const std::vector<std::size_t>& unreached() const noexcept { return unreached_; }

 private:
  std::vector<std::size_t> unreached_;
};

/// A tree property that must hold by construction failed.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& m) : Error("structural", m) {}
};

/// A situation a validated input can never produce.
class InternalContradiction : public Error {
 public:
  explicit InternalContradiction(const std::string& m)
      : Error("internal-contradiction", m) {}
};

/// Exhaustive work that would not finish at desk scale.
class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& m) : Error("resource-limit", m) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error("io", m) {}
};

}  // namespace grs
