#pragma once

#include <stdexcept>
#include <string>

namespace twahss {

// Exit codes used by the command line driver.
enum class ErrorKind
{
    Parse = 2,
    Precondition = 3,
    Unsupported = 4
};

class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

struct ParseError : Error
{
    explicit ParseError(const std::string& w) : Error(ErrorKind::Parse, w) {}
};

struct PreconditionError : Error
{
    explicit PreconditionError(const std::string& w) : Error(ErrorKind::Precondition, w) {}
};

struct UnsupportedError : Error
{
    explicit UnsupportedError(const std::string& w) : Error(ErrorKind::Unsupported, w) {}
};

}  // namespace twahss
