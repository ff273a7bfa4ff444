#pragma once

#include <stdexcept>

namespace samp {

// Bad caller input: shape mismatch, out-of-range parameter, unreadable file.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite value or a numeric guard tripped during computation.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Optimization diverged while fitting a fixture model.
struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace samp
