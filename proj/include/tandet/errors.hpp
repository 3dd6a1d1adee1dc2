#pragma once

#include <stdexcept>
#include <string>

namespace tandet {

// Mathematical precondition violated (pole in a cot family, wrong residue
// class, composite modulus where a prime is required, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed parameters at the interface level (bad flags, bad ranges).
struct param_error : std::runtime_error {
    explicit param_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An enclosure was too wide to decide (pivot straddling zero, precision cap
// reached). Callers retry at higher precision or report an Undecided verdict.
struct undecided_error : std::runtime_error {
    explicit undecided_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tandet
