#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vdmlab {

using Complex = std::complex<double>;

/// A point of C^N; real sets are embedded with zero imaginary parts.
using Point = std::vector<Complex>;

enum class ErrorKind {
  InvalidArgument,
  Overflow,
  ResourceLimit,
  DegenerateWeight,
  DegenerateProblem,
  NumericalDegeneracy,
  Unsupported,
  GridTooCoarse,
  TruncationInsufficient,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. `pointer` is a JSON pointer into the problem
/// description when the error originates from input validation.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::string pointer = {})
      : std::runtime_error(what), kind_(kind), pointer_(std::move(pointer)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  ErrorKind kind_;
  std::string pointer_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace vdmlab
