#pragma once

#include <stdexcept>
#include <string>

namespace zerohopf {

// Base of every domain failure raised by the library. Numerical routines that
// can legitimately find nothing (root scans, classifiers) return values instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotAnEquilibrium : public Error {
public:
    using Error::Error;
};

class DegenerateEpsilon : public Error {
public:
    using Error::Error;
};

class SingularDenominator : public Error {
public:
    using Error::Error;
};

class QuadratureNotConverged : public Error {
public:
    using Error::Error;
};

class HypothesisViolated : public Error {
public:
    using Error::Error;
};

class StepLimitExceeded : public Error {
public:
    using Error::Error;
};

class StepUnderflow : public Error {
public:
    using Error::Error;
};

class NoReturn : public Error {
public:
    using Error::Error;
};

class ShootingDiverged : public Error {
public:
    using Error::Error;
};

class SeedInvalid : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace zerohopf
