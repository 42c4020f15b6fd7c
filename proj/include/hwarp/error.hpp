#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hwarp {

// Bad caller input: non-finite values, mismatched sizes, empty images.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input outside the mathematical domain of the operation (log of a
// non-positive ratio and the like).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A homography that the six-factor family cannot express (reflections,
// vanishing (3,3) entry).
class UnrepresentableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnsupportedFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Source image too small to synthesize a pair without boundary zero-fill.
class MarginError : public std::runtime_error {
 public:
  MarginError(const std::string& what, int required_size)
      : std::runtime_error(what), required_size_(required_size) {}

  int required_size() const noexcept { return required_size_; }

 private:
  int required_size_;
};

}  // namespace hwarp
