#include "wprof/common/error.h"

namespace wprof {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::validation: return "validation";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::duplicate: return "duplicate";
    case ErrorKind::conflict: return "conflict";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::io: return "io";
    case ErrorKind::unavailable: return "unavailable";
  }
  return "unknown";
}

namespace {

std::string summarize(const std::vector<FieldIssue>& issues) {
  std::string out = "validation failed";
  for (const auto& issue : issues) {
    out += "; " + issue.path + ": " + issue.message;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<FieldIssue> issues)
    : Error(ErrorKind::validation, summarize(issues)), issues_(std::move(issues)) {}

}  // namespace wprof
