#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace osc {

enum class ErrorKind {
  InvalidArgument,
  DegenerateProblem,
  NonFinite,
  Equilibrium,
  NonPeriodic,
  Separatrix,
  NoConvergence,
  ModulusOutOfRange,
  OutOfBranch,
  NoMinimum,
  StepUnderflow,
  NoTurning,
  WrongForm,
  AllZero,
};

std::string_view to_string(ErrorKind kind);

// Errors the caller can fix by changing its input, as opposed to numerical
// failures of a well-posed request.
bool is_usage_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  // Coefficient index at which a recursion failed, when applicable.
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

}  // namespace osc
