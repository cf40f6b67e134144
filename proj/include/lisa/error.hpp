#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lisa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A symbol outside {A,C,G,T}. `offset` is 0-based within the sequence or
/// query being parsed; `line`/`column` are 1-based and zero when the source
/// has no line structure.
class InvalidCharacterError : public Error {
 public:
  InvalidCharacterError(char c, std::size_t offset, std::size_t line = 0,
                        std::size_t column = 0);

  char character() const noexcept { return character_; }
  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  char character_;
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class MixedLengthError : public Error {
 public:
  using Error::Error;
};

class ModeUnavailableError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised by index loading; `section()` names the part of the file that failed.
class CorruptIndexError : public Error {
 public:
  CorruptIndexError(std::string section, const std::string& detail);
  const std::string& section() const noexcept { return section_; }

 private:
  std::string section_;
};

}  // namespace lisa
