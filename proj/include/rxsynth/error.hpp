#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rxsynth {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class AlphabetError : public Error {
 public:
  using Error::Error;
};

// Raised when an operation that needs a hole-free regex receives a template.
class IncompleteRegexError : public Error {
 public:
  using Error::Error;
};

class BoundExceededError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  enum class Kind { InsufficientLanguage, BudgetExhausted };

  GenerationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class LabelingError : public Error {
 public:
  enum class Kind { InvalidLabeling, InconsistentLength, NoPartition, TooManyParts };

  LabelingError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class MissingPredictionError : public Error {
 public:
  using Error::Error;
};

// Some string occurs among both the positive and the negative examples.
class ConflictError : public Error {
 public:
  using Error::Error;
};

}  // namespace rxsynth
