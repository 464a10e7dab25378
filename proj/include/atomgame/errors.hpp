#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace atomgame {

/// Machine-readable failure category. The wire protocol reports these as the
/// `error` string of a failed response.
enum class ErrorCode {
  kCollision,
  kOutOfBounds,
  kNotPlayable,
  kEpisodeDone,
  kCapacity,
  kCongestion,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

class AtomGameError : public std::runtime_error {
 public:
  AtomGameError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// QASM / native-format parse failure. Line and column are 1-based; zero means
/// the position is unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(format(what, line, column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace atomgame
