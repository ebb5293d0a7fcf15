#pragma once

#include <stdexcept>
#include <string>

namespace revivals {

// Raised when assembled quantities violate an identity they must satisfy
// (imaginary residue on a Hermitian form, negative variance, ...).
class NumericalConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Stroboscopic collapse fit could not be performed.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace revivals
