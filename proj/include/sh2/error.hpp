#ifndef SH2_ERROR_HPP
#define SH2_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sh2 {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  DomainError(std::string parameter, const std::string& what)
      : std::domain_error(parameter + ": " + what), parameter_(std::move(parameter)) {}

  /// Name of the offending parameter, e.g. "k" or "t".
  const std::string& parameter() const noexcept { return parameter_; }

private:
  std::string parameter_;
};

/// A numerical invariant that theory guarantees was observed to fail.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// File output failed; message carries the path.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace sh2

#endif  // SH2_ERROR_HPP
