#pragma once

#include <doctest.h>

#include <optional>
#include <string>

#include "nusample/error.hpp"

// Kind of the nusample::Error thrown by f, or nullopt if it returned.
template <typename F>
std::optional<nusample::ErrorKind> error_of(F&& f) {
    try {
        f();
    } catch (const nusample::Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

#define CHECK_ERROR(expr, k) CHECK(error_of([&] { (void)(expr); }) == std::optional(nusample::ErrorKind::k))

inline std::string data_path(const std::string& name) { return std::string(NUSAMPLE_DATA_DIR) + "/" + name; }
