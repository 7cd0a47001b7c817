#pragma once

#include <stdexcept>
#include <string>

namespace kgforge {

// Fatal I/O failure: file unreadable, directory missing, write refused.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input parsed but does not look like the expected format.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Seed sampling requested from an empty or unknown category.
struct NoSeedAvailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Extraction requested from an entity the knowledge base does not contain.
struct UnknownEntity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluator answered outside the strict YES/NO contract.
struct EvaluatorParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluator transport kept failing after the retry budget.
struct EvaluatorUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Embedding or scoring backend failure.
struct MetricBackendError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace kgforge
