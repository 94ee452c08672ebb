#pragma once

#include <stdexcept>
#include <string>

namespace hypquot {

enum class ErrorKind {
    self_loop,
    duplicate_edge,
    disconnected,
    invalid_vertex,
    resource,
    unsupported,
    domain,
    convergence,
    format,
};

const char* to_string(ErrorKind kind);

/// Library-wide exception carrying a machine-readable kind next to the message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace hypquot
