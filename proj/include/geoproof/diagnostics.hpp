#pragma once

#include <string>
#include <vector>

namespace geoproof {

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string code;     // stable machine-readable tag, e.g. "undeclared-point"
    std::string message;  // human-readable explanation
    int line = 0;         // 1-based source line, 0 when not tied to a location

    bool is_error() const { return severity == Severity::Error; }
};

inline bool has_errors(const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds)
        if (d.is_error()) return true;
    return false;
}

std::string format_diagnostic(const Diagnostic& d);

}  // namespace geoproof
