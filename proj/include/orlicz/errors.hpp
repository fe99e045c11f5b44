#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

// Bad arguments, mismatched grids, files that do not parse.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A structural assumption was violated mid-computation (e.g. an integrand
// claiming to be non-decreasing turned out not to be).
struct IntegrityError : std::runtime_error {
  explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

// Requested something the toolkit deliberately does not implement.
struct UnsupportedError : std::runtime_error {
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace orlicz
