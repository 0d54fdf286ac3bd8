#include "rbn/errors.hpp"

namespace rbn {

std::string describe(const Violation& v) {
  std::string out;
  if (v.node > 0) out += "node " + std::to_string(v.node) + ": ";
  out += v.field + ": " + v.message;
  return out;
}

namespace {

std::string join(const std::vector<Violation>& vs) {
  std::string out = "invalid genome";
  for (const auto& v : vs) out += "\n  " + describe(v);
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(join(violations)), violations_(std::move(violations)) {}

ParseError::ParseError(int line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

SchemaError::SchemaError(std::string path, const std::string& message)
    : Error(path + ": " + message), path_(std::move(path)) {}

}  // namespace rbn
