#ifndef HW_ERROR_HPP
#define HW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hw {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax error with 1-based line/column of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line(line),
        column(column) {}
  int line;
  int column;
};

// A symbol was used with two different arities in one session.
class ArityError : public Error {
 public:
  using Error::Error;
};

// Input formula falls outside the supported fragment, or is not closed.
class FragmentError : public Error {
 public:
  using Error::Error;
};

class RangeRestrictionError : public Error {
 public:
  using Error::Error;
};

class UnknownSymbolError : public Error {
 public:
  explicit UnknownSymbolError(const std::string& symbol)
      : Error("unknown symbol: " + symbol), symbol(symbol) {}
  std::string symbol;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace hw

#endif
