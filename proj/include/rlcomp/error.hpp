#pragma once

#include <stdexcept>
#include <string>

namespace rlcomp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lists cannot be aligned (empty input, or unequal lengths handed to a
/// metric that needs an aligned pair).
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter is outside its domain (p < 1, M > N, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A metric or statistic is mathematically undefined for the input
/// (zero norm, zero variance, too few points).
class UndefinedValueError : public Error {
 public:
  using Error::Error;
};

/// A term is not in the corpus index.
class AbsentTermError : public Error {
 public:
  explicit AbsentTermError(std::string term)
      : Error("term not in index: '" + term + "'"), term_(std::move(term)) {}
  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

/// Corpus ingestion or index persistence failed.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// An input file does not follow its documented format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// The pipeline cannot produce a score for a phrase. `reason()` is a short
/// machine-readable code such as `no_perturbation` or `absent_term=tape`.
class UnscorablePhrase : public Error {
 public:
  UnscorablePhrase(std::string phrase, std::string reason)
      : Error("cannot score '" + phrase + "': " + reason),
        phrase_(std::move(phrase)),
        reason_(std::move(reason)) {}
  const std::string& phrase() const noexcept { return phrase_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string phrase_;
  std::string reason_;
};

}  // namespace rlcomp
