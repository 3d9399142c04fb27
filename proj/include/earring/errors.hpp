#pragma once

#include <stdexcept>
#include <string>

namespace earring {

// Base of every error the library throws. Negative answers (not equivalent,
// not null-homotopic) are return values, never exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string token, std::size_t position)
      : Error(what), token_(std::move(token)), position_(position) {}

  const std::string& token() const noexcept { return token_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string token_;
  std::size_t position_;
};

// An argument outside the operation's domain (bad index, empty set, s not in
// the index set, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of the operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An infinitary expression used a generator outside its occurrence bound.
class CertificateViolation : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

class UnsupportedModel : public Error {
 public:
  using Error::Error;
};

}  // namespace earring
