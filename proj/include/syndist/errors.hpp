#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace syndist {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed bracketed text; carries the byte offset of the failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Well-balanced input that violates the treebank format (e.g. a preterminal
/// with zero or several tokens).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A tree cannot be binarized (reserved characters in labels).
class EncodingError : public Error {
 public:
  using Error::Error;
};

/// A binary tree cannot be turned back into an n-ary tree.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Caller violated a precondition (shape mismatch, empty range, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Gold and predicted trees cannot be compared.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace syndist
