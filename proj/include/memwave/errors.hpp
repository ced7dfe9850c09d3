#pragma once

#include <stdexcept>
#include <string>

namespace memwave {

/// Parameter or grid outside the admissible domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sample data that cannot be processed (non-finite values, missing profiles, short runs).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration text. The message names section.key and the line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Persisted record whose content does not match its stored hash, or a
/// content-addressed directory that already holds different content.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the iteration lemma's blow-up condition fails, so no time bound exists.
class NoCertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace memwave
