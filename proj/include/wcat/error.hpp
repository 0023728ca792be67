#ifndef WCAT_ERROR_HPP
#define WCAT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wcat {

enum class ErrorKind {
  parse,     // malformed user input (weight specs, shapes, flags)
  domain,    // mathematically invalid arguments
  resource,  // configured enumeration/window caps exceeded
  mismatch,  // independent oracles disagree
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::parse, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(ErrorKind::resource, what) {}
};

class MismatchError : public Error {
 public:
  explicit MismatchError(const std::string& what) : Error(ErrorKind::mismatch, what) {}
};

}  // namespace wcat

#endif  // WCAT_ERROR_HPP
