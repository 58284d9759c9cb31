#pragma once

#include <stdexcept>
#include <string>

namespace lrf {

// Exit-code categories used by the CLI: 2 config/validation, 3 precision,
// 4 I/O. Library code throws, the CLI maps.
enum class errc { validation = 2, precision = 3, io = 4 };

class Error : public std::runtime_error {
 public:
  Error(errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(errc::validation, msg) {}
};

// Carries the partial estimate when a Monte Carlo budget runs out.
struct PrecisionError : Error {
  PrecisionError(const std::string& msg, double est, double se)
      : Error(errc::precision, msg), partial_estimate(est), partial_stderr(se) {}
  double partial_estimate;
  double partial_stderr;
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(errc::io, msg) {}
};

}  // namespace lrf
