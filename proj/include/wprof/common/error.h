#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wprof {

enum class ErrorKind {
  parse,
  validation,
  not_found,
  duplicate,
  conflict,
  precondition,
  io,
  unavailable,
};

std::string_view to_string(ErrorKind kind);

// Every failure the library reports goes through this type. The kind drives
// HTTP status mapping in the service and the exit JSON of the CLI.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct FieldIssue {
  std::string path;
  std::string message;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<FieldIssue> issues);

  const std::vector<FieldIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<FieldIssue> issues_;
};

}  // namespace wprof
