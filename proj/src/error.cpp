#include "nusample/error.hpp"

namespace nusample {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::io: return "IoError";
        case ErrorKind::parse: return "ParseError";
        case ErrorKind::missing_value: return "MissingValue";
        case ErrorKind::config: return "ConfigError";
        case ErrorKind::shape: return "ShapeError";
        case ErrorKind::bad_version: return "BadVersion";
        case ErrorKind::bad_k: return "BadK";
        case ErrorKind::bad_spec: return "BadSpec";
        case ErrorKind::length_mismatch: return "LengthMismatch";
        case ErrorKind::not_two_dimensional: return "NotTwoDimensional";
        case ErrorKind::non_binary: return "NonBinary";
        case ErrorKind::too_few_samples: return "TooFewSamples";
        case ErrorKind::single_class: return "SingleClass";
        case ErrorKind::empty_input: return "EmptyInput";
        case ErrorKind::all_folds_skipped: return "AllFoldsSkipped";
    }
    return "Unknown";
}

bool is_degenerate_data(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::non_binary:
        case ErrorKind::too_few_samples:
        case ErrorKind::single_class:
        case ErrorKind::empty_input:
        case ErrorKind::all_folds_skipped:
            return true;
        default:
            return false;
    }
}

}  // namespace nusample
