#pragma once

#include <stdexcept>
#include <string>

namespace csb {

// Raised when a domain invariant is violated (bad profile, out-of-range
// quality, catalog mismatch, unknown entity, ...). The message names the
// offending field or attribute.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class NotFoundError : public std::runtime_error {
public:
    explicit NotFoundError(const std::string& what) : std::runtime_error(what) {}
};

class StateError : public std::runtime_error {
public:
    explicit StateError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace csb
