#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace reltrace {

enum class ErrorKind {
    InvalidInput,        // malformed or inconsistent user data
    ComputationFailure,  // the data is well formed but a computation cannot complete
};

/// Exception carrying the module that raised it, so diagnostics read
/// "covers: non-unique solution ..." rather than a bare message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& message)
        : std::runtime_error(module + ": " + message), kind_(kind), module_(std::move(module)), detail_(message) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }
    /// The message without the module prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string module_;
    std::string detail_;
};

[[noreturn]] inline void throw_invalid(const std::string& module, const std::string& message) {
    throw Error(ErrorKind::InvalidInput, module, message);
}

[[noreturn]] inline void throw_failure(const std::string& module, const std::string& message) {
    throw Error(ErrorKind::ComputationFailure, module, message);
}

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string module;
    std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

inline bool has_errors(const Diagnostics& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error) return true;
    return false;
}

}  // namespace reltrace
