#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nusample {

enum class ErrorKind {
    // input validation
    io,
    parse,
    missing_value,
    config,
    shape,
    bad_version,
    bad_k,
    bad_spec,
    length_mismatch,
    not_two_dimensional,
    // degenerate data
    non_binary,
    too_few_samples,
    single_class,
    empty_input,
    all_folds_skipped,
};

std::string_view error_kind_name(ErrorKind kind);

/// True for kinds caused by the data itself rather than by how the caller
/// asked for something (the CLI maps these to a distinct exit code).
bool is_degenerate_data(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace nusample
