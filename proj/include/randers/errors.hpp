#pragma once

#include <stdexcept>
#include <string>

namespace randers {

// Malformed numeric input: non-finite values, bad ranges, bad shapes.
struct InvalidInput : std::invalid_argument {
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Point outside a model's open domain (including the guard band).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A point or vector tagged with one model fed to an operation expecting another.
struct ModelMismatch : std::logic_error {
    explicit ModelMismatch(const std::string& what) : std::logic_error(what) {}
};

// The vertical Hessian is undefined at v = 0.
struct DegenerateDirection : InvalidInput {
    explicit DegenerateDirection(const std::string& what) : InvalidInput(what) {}
};

// An identically-zero discrete field has no Rayleigh quotient.
struct DegenerateField : InvalidInput {
    explicit DegenerateField(const std::string& what) : InvalidInput(what) {}
};

}  // namespace randers
