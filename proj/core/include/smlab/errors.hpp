#pragma once

#include <stdexcept>
#include <string>

namespace smlab {

// Error categories map one-to-one onto CLI exit codes.
enum class errc {
  parse = 2,        // malformed input / descriptor
  precondition = 3, // violated operation precondition (e.g. N = M)
  cap = 4,          // configured size cap exceeded
  internal = 5,     // invariant violation inside the library
};

class error : public std::runtime_error {
public:
  error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const { return kind_; }

private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) { throw error(kind, what); }

} // namespace smlab
