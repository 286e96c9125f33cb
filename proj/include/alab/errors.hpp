#pragma once

#include <stdexcept>
#include <string>

namespace alab {

// Bad experiment configuration (unknown task, malformed JSON, ...). CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dataset ingestion failure (missing file, bad magic, ragged CSV, ...). CLI exit code 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Incompatible tensor shapes.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Non-finite values where finite ones are required (NaN input, diverged loss).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace alab
