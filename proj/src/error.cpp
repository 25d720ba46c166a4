#include "mes/error.hpp"

namespace mes {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Argument: return "argument";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Numeric: return "numeric";
    case ErrorCode::Io: return "io";
    case ErrorCode::MissingColumn: return "missing-column";
    case ErrorCode::NoRows: return "no-rows";
  }
  return "unknown";
}

}  // namespace mes
