#pragma once

#include <stdexcept>
#include <string>

namespace cstgeo {

// Base for every error the library throws. The CLI maps ValidationError to
// exit status 2 and NumericalContractError to exit status 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NumericalContractError : public Error {
 public:
  using Error::Error;
};

class UnboundSymbolError : public ValidationError {
 public:
  explicit UnboundSymbolError(const std::string& symbol)
      : ValidationError("unbound symbol: " + symbol), symbol_(symbol) {}
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

class DivisionByZeroError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidParamsError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class GridTooSmallError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SingularPointError : public NumericalContractError {
 public:
  SingularPointError(const std::string& what, long node = -1)
      : NumericalContractError(what), node_(node) {}
  // Flat index of the offending grid node, or -1 for scalar evaluations.
  long node() const noexcept { return node_; }

 private:
  long node_;
};

class LinearSolveError : public NumericalContractError {
 public:
  using NumericalContractError::NumericalContractError;
};

}  // namespace cstgeo
