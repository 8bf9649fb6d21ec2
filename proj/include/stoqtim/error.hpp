#pragma once

#include <stdexcept>
#include <string>

namespace stoqtim {

enum class ErrorKind {
  validation,
  empty_sector,
  size_limit,
  dimension_mismatch,
  not_stoquastic,
  triangle,
  gap_closure,
  ill_conditioned,
  precondition,
  non_convergence,
  unreachable,
  scale_infeasible,
};

// Exit-code contract of the command-line front end.
inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::size_limit:
    case ErrorKind::unreachable:
    case ErrorKind::scale_infeasible:
      return 3;
    case ErrorKind::non_convergence:
      return 4;
    default:
      return 2;
  }
}

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::empty_sector: return "empty-sector";
    case ErrorKind::size_limit: return "size-limit";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::not_stoquastic: return "not-stoquastic";
    case ErrorKind::triangle: return "triangle";
    case ErrorKind::gap_closure: return "gap-closure";
    case ErrorKind::ill_conditioned: return "ill-conditioned-rotation";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::unreachable: return "unreachable-target";
    case ErrorKind::scale_infeasible: return "scale-infeasible";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace stoqtim
