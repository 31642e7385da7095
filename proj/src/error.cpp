#include "osc/error.hpp"

namespace osc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateProblem: return "DegenerateProblem";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::Equilibrium: return "Equilibrium";
    case ErrorKind::NonPeriodic: return "NonPeriodic";
    case ErrorKind::Separatrix: return "Separatrix";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorKind::OutOfBranch: return "OutOfBranch";
    case ErrorKind::NoMinimum: return "NoMinimum";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::NoTurning: return "NoTurning";
    case ErrorKind::WrongForm: return "WrongForm";
    case ErrorKind::AllZero: return "AllZero";
  }
  return "Unknown";
}

bool is_usage_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::DegenerateProblem:
    case ErrorKind::ModulusOutOfRange:
    case ErrorKind::OutOfBranch:
    case ErrorKind::WrongForm:
      return true;
    default:
      return false;
  }
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     std::optional<std::size_t> index) {
  std::string out{to_string(kind)};
  out += ": ";
  out += message;
  if (index) out += " (index " + std::to_string(*index) + ")";
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> index)
    : std::runtime_error(decorate(kind, message, index)),
      kind_(kind),
      index_(index) {}

}  // namespace osc
