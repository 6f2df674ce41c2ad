#pragma once
#include <stdexcept>
#include <string>

namespace serreatlas {

// Malformed or out-of-contract input (bad JSON, wrong family, inconsistent dims).
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& m) : std::runtime_error(m) {}
};

// A nilpotency certificate could not be verified for a custom algebra.
struct CertificateError : std::runtime_error {
    explicit CertificateError(const std::string& m) : std::runtime_error(m) {}
};

// Operation refused on mathematical grounds (infinite global dimension, non-thin input, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& m) : std::runtime_error(m) {}
};

} // namespace serreatlas
