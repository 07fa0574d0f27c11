#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pants {

// Base of every error raised by the library. Callers that only care about
// "something went wrong in the computation" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// words

class EmptyWord : public Error {
 public:
  EmptyWord() : Error("word is empty") {}
};

class NonReducedWord : public Error {
 public:
  explicit NonReducedWord(std::size_t index)
      : Error("word is not cyclically reduced: letter " + std::to_string(index) +
              " is followed by its inverse"),
        index_(index) {}

  // Position i such that letters[(i+1) mod L] == inverse(letters[i]).
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class BadLetter : public Error {
 public:
  BadLetter(char c, std::size_t index)
      : Error(std::string("invalid letter '") + c + "' at position " +
              std::to_string(index) + " (alphabet is a, A, b, B)"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// moduli

class NonPositiveLength : public Error {
 public:
  using Error::Error;
};

class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

class DegenerateParams : public Error {
 public:
  using Error::Error;
};

// geometry

class EllipticOrParabolicTrace : public Error {
 public:
  using Error::Error;
};

class OverflowDetected : public Error {
 public:
  using Error::Error;
};

// stats

class TooFewSamples : public Error {
 public:
  using Error::Error;
};

class ZeroVariance : public Error {
 public:
  using Error::Error;
};

class EmptySample : public Error {
 public:
  using Error::Error;
};

class SpacingTooFine : public Error {
 public:
  using Error::Error;
};

// experiment / io

class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pants
