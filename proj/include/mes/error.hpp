#pragma once

#include <stdexcept>
#include <string>

namespace mes {

enum class ErrorCode {
  Argument,       // invalid parameter (k out of range, p outside (0,1), ...)
  Domain,         // input outside the estimator's domain (nonpositive Hill data, p too small)
  Numeric,        // quadrature or root finding failed to converge
  Io,             // file could not be opened or read
  MissingColumn,  // requested CSV column not present
  NoRows,         // no row survived cleaning
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error(ErrorCode::Argument, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorCode::Numeric, what) {}
};

class DataError : public Error {
 public:
  DataError(ErrorCode code, const std::string& what) : Error(code, what) {}
};

}  // namespace mes
