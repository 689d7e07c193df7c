#pragma once

#include <stdexcept>
#include <string>

namespace obsfeat {

// Failure classes map one-to-one onto CLI exit codes.
enum class ErrorKind {
    input = 2,      // malformed files, schema violations, invalid or infeasible parameters
    numerical = 3,  // undefined statistics, non-convergence
    io = 4,         // unreadable or unwritable paths
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& what) { throw Error(ErrorKind::input, what); }
[[noreturn]] inline void fail_numerical(const std::string& what) { throw Error(ErrorKind::numerical, what); }
[[noreturn]] inline void fail_io(const std::string& what) { throw Error(ErrorKind::io, what); }

}  // namespace obsfeat
