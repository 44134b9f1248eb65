#pragma once

#include <stdexcept>
#include <string>

namespace vsh {

// Field/grid shape disagreements (sample layout, mixed grids, bad file headers).
struct LayoutError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Invalid construction parameters (grid sizes, source geometry).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input violates a gauge precondition (e.g. l = 0 content fed to the
// inverse angular Laplacian). Carries the offending norm in the message.
struct GaugeViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Extrapolation / least-squares failure (too few points, singular system).
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace vsh
