#pragma once

#include <stdexcept>
#include <string>

namespace tlab {

// Base for every error raised by the library. `kind()` is the stable
// machine-readable tag written by the CLI into its error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct InvalidParameter : Error {
    explicit InvalidParameter(const std::string& w) : Error("invalid-parameter", w) {}
};

struct RangeError : Error {
    explicit RangeError(const std::string& w) : Error("range-error", w) {}
};

struct IntegrationFailure : Error {
    IntegrationFailure(const std::string& w, double last_valid_time)
        : Error("integration-failure", w), last_time(last_valid_time) {}
    double last_time;
};

struct AccuracyError : Error {
    explicit AccuracyError(const std::string& w) : Error("accuracy-error", w) {}
};

struct InsufficientData : Error {
    explicit InsufficientData(const std::string& w) : Error("insufficient-data", w) {}
};

struct EmptyLayer : Error {
    explicit EmptyLayer(const std::string& w) : Error("empty-layer", w) {}
};

struct AliasingError : Error {
    explicit AliasingError(const std::string& w) : Error("aliasing-error", w) {}
};

}  // namespace tlab
