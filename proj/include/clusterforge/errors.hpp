#pragma once

#include <stdexcept>
#include <string>

namespace clusterforge {

/// Base class of every domain error raised by the library. Usage and parse
/// problems are reported with ParseError; everything else is a domain error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotASummand : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class IsProjective : public Error {
 public:
  using Error::Error;
};

class IsInjective : public Error {
 public:
  using Error::Error;
};

/// Raised by tau when the Nakayama image of the resolution differential is
/// not surjective, i.e. the input was not rigid.
class NotExceptional : public Error {
 public:
  using Error::Error;
};

class VertexNotSinkOrSource : public Error {
 public:
  using Error::Error;
};

class SimpleAtVertex : public Error {
 public:
  using Error::Error;
};

class NotFoundWithinBound : public Error {
 public:
  using Error::Error;
};

class ConstructionFailed : public Error {
 public:
  using Error::Error;
};

/// An exchange pair whose middle terms cannot be balanced; indicates an
/// inconsistent pool rather than bad user input.
class BalanceUnsolvable : public Error {
 public:
  using Error::Error;
};

// line 0 means the problem concerns the whole file.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, int line, const std::string& what)
      : std::runtime_error(file + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace clusterforge
