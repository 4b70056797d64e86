#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sortlab {

/// Base for every error raised by the library. The CLI maps subclasses to
/// process exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A sort produced output that is not a sorted permutation of its input.
class MeasurementError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed CSV/JSON/config content. `line()` is 1-based, 0 when unknown.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Numerical failures inside the factor-analysis pipeline.
class StatsError : public Error {
public:
    enum class Kind {
        DegenerateInput,
        ZeroVariance,
        SingularMatrix,
        NoConvergence,
        NegativeEigenvalue,
        ZeroCommunalityRow,
        SingularTransform,
        ShapeMismatch,
    };

    StatsError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace sortlab
