#pragma once

#include <stdexcept>
#include <string>

namespace wm {

// Input outside the mathematical domain of an operation (bad word, bad dims,
// regime mismatch, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration or memory cap exceeded.
struct CapExceeded : DomainError {
    explicit CapExceeded(const std::string& what) : DomainError(what) {}
};

}  // namespace wm
