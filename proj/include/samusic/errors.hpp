#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace samusic {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (dimension mismatch, bad range, ...).
struct InvalidInput : Error {
    using Error::Error;
};

/// Input is degenerate for the requested operation (zero matrix, empty draw, ...).
struct DegenerateInput : Error {
    using Error::Error;
};

/// Problem size exceeds the supported combinatorial budget.
struct UnsupportedSize : Error {
    using Error::Error;
};

/// An enumeration would exceed the configured budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

/// A greedy selection ran out of admissible candidates.
struct SpanExhausted : Error {
    using Error::Error;
};

/// An iterative procedure exceeded its iteration cap.
struct NoConvergence : Error {
    using Error::Error;
};

/// No eigenvalue gap passed the threshold; carries the spectrum for diagnostics.
struct NoSpectralGap : Error {
    std::vector<double> spectrum;
    NoSpectralGap(const std::string& what, std::vector<double> spec)
        : Error(what), spectrum(std::move(spec)) {}
};

}  // namespace samusic
