#ifndef AMTIS_ERRORS_HPP
#define AMTIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace amtis {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Image / threshold-set contracts
class EmptyThresholdSet : public Error {
public:
    using Error::Error;
};
class DimensionMismatch : public Error {
public:
    using Error::Error;
};
class ImageTooSmall : public Error {
public:
    using Error::Error;
};

// Histogram contracts
class EmptyImage : public Error {
public:
    using Error::Error;
};
class InvalidPartitionCount : public Error {
public:
    using Error::Error;
};

// Threshold selection
class InsufficientCandidates : public Error {
public:
    using Error::Error;
};
class DegenerateHistogram : public Error {
public:
    using Error::Error;
};
class UndefinedObjective : public Error {
public:
    using Error::Error;
};

// I/O and harness
class IoError : public Error {
public:
    using Error::Error;
};
class EmptyCorpus : public Error {
public:
    using Error::Error;
};

} // namespace amtis

#endif
