#pragma once

#include <stdexcept>
#include <string>

namespace baglid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration (bag size larger than the cloud, unknown names, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Neighborhood size exceeds what the reference set can supply.
class CapacityError : public Error {
public:
    using Error::Error;
};

class EmptyReferenceError : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

/// A neighbor distance of zero, which breaks the continuity assumption of the estimators.
class ZeroDistanceError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace baglid
