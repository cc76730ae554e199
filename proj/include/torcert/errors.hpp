#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace torcert {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input text violates the polynomial or symbol grammar.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable: " + name), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class DuplicateVariable : public Error {
 public:
  explicit DuplicateVariable(const std::string& name)
      : Error("duplicate variable: " + name) {}
};

class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroInput : public Error {
 public:
  using Error::Error;
};

class ZeroEntry : public Error {
 public:
  using Error::Error;
};

class ZeroParameter : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class NotHomogeneous : public Error {
 public:
  using Error::Error;
};

class VariablePresent : public Error {
 public:
  using Error::Error;
};

class NotAUnitParam : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public OutOfRange {
 public:
  using OutOfRange::OutOfRange;
};

class BadPrime : public Error {
 public:
  using Error::Error;
};

class BadChar : public Error {
 public:
  using Error::Error;
};

class CharDividesM : public Error {
 public:
  using Error::Error;
};

class DegreeTooSmall : public Error {
 public:
  using Error::Error;
};

class MissingPurePower : public Error {
 public:
  explicit MissingPurePower(const std::string& var)
      : Error("missing pure power of " + var), var_(var) {}
  const std::string& variable() const { return var_; }

 private:
  std::string var_;
};

class VanishingImage : public Error {
 public:
  using Error::Error;
};

// The constructed equation exactly divides one of its defining entries.
class EquationDividesEntry : public Error {
 public:
  using Error::Error;
};

class WitnessFailure : public Error {
 public:
  using Error::Error;
};

class EquivalenceFailure : public Error {
 public:
  using Error::Error;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

class DegreeBelowThreshold : public Error {
 public:
  using Error::Error;
};

class OrderIncomplete : public Error {
 public:
  using Error::Error;
};

// A single-step residue produced a sum of distinct symbols; use iterated_residue.
class SumNotMonomial : public Error {
 public:
  using Error::Error;
};

class AmbientTooLarge : public Error {
 public:
  using Error::Error;
};

// Root extraction failed; carries the first obstructing monomial (printed form).
class NotAPower : public Error {
 public:
  NotAPower(const std::string& msg, const std::string& monomial)
      : Error(msg + " (obstruction: " + monomial + ")"), monomial_(monomial) {}
  const std::string& monomial() const { return monomial_; }

 private:
  std::string monomial_;
};

}  // namespace torcert
