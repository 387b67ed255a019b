#ifndef IWA_ERRORS_HPP
#define IWA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace iwa {

// Thrown for malformed input: bad schemas, dimension mismatches, size caps,
// values outside the documented domain. CLI maps this to exit code 2.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an input violates a mathematical hypothesis an operation
// depends on (e.g. a ramified place of good reduction, an isotrivial
// j-invariant). CLI maps this to exit code 3.
struct hypothesis_error : std::runtime_error {
    explicit hypothesis_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by the profinite cohomology routine when consecutive finite levels
// keep disagreeing after the allowed retry.
struct stabilization_error : hypothesis_error {
    explicit stabilization_error(const std::string& msg) : hypothesis_error(msg) {}
};

} // namespace iwa

#endif
