#ifndef SYNCMDP_ERRORS_HPP
#define SYNCMDP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace syncmdp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed documents and rationals
struct ParseError : Error {
  using Error::Error;
};

struct LookupError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

// a configured cap was exceeded
struct ResourceError : Error {
  using Error::Error;
};

// synthesis asked for a strategy the instance does not admit
struct NotWinningError : Error {
  using Error::Error;
};

} // namespace syncmdp

#endif
