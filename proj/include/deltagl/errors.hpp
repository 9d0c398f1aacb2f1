#pragma once

#include <stdexcept>
#include <string>

namespace deltagl {

// Library-wide error with a stable machine-readable kind; the CLI maps any
// Error to exit code 2 and emits {"error": kind, "message": ...}.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace deltagl
