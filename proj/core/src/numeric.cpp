#include "satotate/numeric.hpp"

#include <cstdio>

#include "satotate/error.hpp"

namespace satotate {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Input: return "input error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Data: return "data error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Coverage: return "coverage error";
    case ErrorKind::Resource: return "resource error";
  }
  return "error";
}

}  // namespace satotate
