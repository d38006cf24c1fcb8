#pragma once

#include <stdexcept>
#include <string>

namespace ccic {

struct TermNode;

enum class ErrorKind {
  TypeMismatch,
  UnboundVariable,
  IllFormedElim,
  GuardFailed,
  FuelExhausted,
  StrongElimForbidden,
  ClassMismatch,
  SortMismatch,
  IllFormedTerm,
  ParseError,
  InvalidStep,
  GoalMismatch,
  Usage,
};

const char* to_string(ErrorKind kind);

// Every failure inside the kernel is reported through this exception. `where`
// points at the innermost term being checked when the error was raised (used
// by the front end to recover a source span) and may be null.
class KernelError : public std::runtime_error {
 public:
  KernelError(ErrorKind kind, const std::string& message,
              const TermNode* where = nullptr)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        where_(where) {}

  ErrorKind kind() const { return kind_; }
  const TermNode* where() const { return where_; }
  void set_where(const TermNode* where) { where_ = where; }

 private:
  ErrorKind kind_;
  const TermNode* where_;
};

}  // namespace ccic
