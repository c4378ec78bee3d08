#ifndef FFK_ERRORS_HPP
#define FFK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ffk {

enum class ErrorKind {
  MalformedNotation,
  InconsistentDiagram,
  DegenerateDiagram,
  InvalidParameter,
  BudgetExceeded,
  NotStabilized,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  static const char* kind_name(ErrorKind k) {
    switch (k) {
      case ErrorKind::MalformedNotation: return "MalformedNotation";
      case ErrorKind::InconsistentDiagram: return "InconsistentDiagram";
      case ErrorKind::DegenerateDiagram: return "DegenerateDiagram";
      case ErrorKind::InvalidParameter: return "InvalidParameter";
      case ErrorKind::BudgetExceeded: return "BudgetExceeded";
      case ErrorKind::NotStabilized: return "NotStabilized";
      case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
  }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace ffk

#endif
