#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rbn {

using NodeId = int;

// Base class for recoverable failures (bad input files, invalid genomes).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Violation {
  NodeId node = 0;  // 0 when the violation is genome-wide
  std::string field;
  std::string message;
};

std::string describe(const Violation& v);

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace rbn
