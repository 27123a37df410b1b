#ifndef QPB_ERRORS_HPP
#define QPB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpb {

/// Base for every error raised by the engine. `code()` is the stable,
/// machine-greppable reason token the CLI prints first on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error("SyntaxError", "at " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("DomainError", what) {}
};

class NonCommutingFields : public Error {
 public:
  explicit NonCommutingFields(const std::string& what)
      : Error("NonCommutingFields", what) {}
};

class QueerAtPoint : public Error {
 public:
  explicit QueerAtPoint(const std::string& what) : Error("QueerAtPoint", what) {}
};

class WitnessNotFound : public Error {
 public:
  explicit WitnessNotFound(const std::string& what)
      : Error("WitnessNotFound", what) {}
};

class AxiomViolation : public Error {
 public:
  explicit AxiomViolation(const std::string& what)
      : Error("AxiomViolation", what) {}
};

class ToleranceExceeded : public Error {
 public:
  explicit ToleranceExceeded(const std::string& what)
      : Error("ToleranceExceeded", what) {}
};

}  // namespace qpb

#endif
