#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace discthin {

/// A point of R^d. After uniformization every coordinate lies in [0, 1].
using Point = std::vector<double>;

/// A point together with its sample-of-origin label (+1 for X, -1 for Y).
struct SignedItem {
  Point point;
  int sign = 1;
};

using SignedStream = std::vector<SignedItem>;

enum class ErrorCode {
  invalid_argument,
  out_of_range,
  dimension_mismatch,
  size_guard,
  bound_violation,
  io,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library; `code()` is what the CLI reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace discthin
