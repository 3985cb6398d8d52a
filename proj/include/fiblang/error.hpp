#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fiblang {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An id is referenced but never declared, or a required entry is missing.
class MalformedSpec : public Error {
 public:
  using Error::Error;
};

class CodMismatch : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownObject : public Error {
 public:
  using Error::Error;
};

class NotDiscreteFibration : public Error {
 public:
  using Error::Error;
};

class InvalidFunctor : public Error {
 public:
  using Error::Error;
};

// A constructed witness failed verification. Never expected on valid input.
class WitnessFailure : public Error {
 public:
  using Error::Error;
};

class NotOverMCG : public Error {
 public:
  using Error::Error;
};

class UnequalFibres : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t column)
      : Error(what + " (column " + std::to_string(column) + ")"), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

class UnparsedSentence : public Error {
 public:
  UnparsedSentence(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Schema problem in a workspace document; path is a JSON pointer.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

}  // namespace fiblang
