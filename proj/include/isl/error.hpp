#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isl {

enum class errc {
  incompatible_domains,
  invalid_argument,
  budget_exceeded,
  parse_error,
  not_a_loop,
  not_closed,
  spec_mismatch,
  unsupported,
};

/// Base of every exception thrown by the library. The code drives CLI exit
/// statuses, so keep it stable.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

class parse_error : public error {
 public:
  parse_error(std::size_t position, const std::string& what)
      : error(errc::parse_error,
              what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw error(code, what);
}

}  // namespace isl
