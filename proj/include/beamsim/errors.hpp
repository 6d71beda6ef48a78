#pragma once

#include <stdexcept>
#include <string>

namespace beamsim {

// Base class for all simulator errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numeric argument is out of its valid domain (non-finite, negative, ...).
struct InvalidArgument : Error {
  using Error::Error;
};

// Geometry query on coincident or otherwise degenerate inputs.
struct DegenerateGeometry : Error {
  using Error::Error;
};

// Beamwidth not present in the configured ladder.
struct InvalidBeamwidth : Error {
  using Error::Error;
};

// Malformed scheduling announcement (e.g. interval index out of range).
struct ProtocolError : Error {
  using Error::Error;
};

// Schedule does not fit the available intervals.
struct CapacityError : Error {
  using Error::Error;
};

// Statistic requested over an empty sample set.
struct EmptyDataError : Error {
  using Error::Error;
};

// Throughput gain against a zero baseline.
struct UndefinedGainError : Error {
  using Error::Error;
};

// Inconsistent or unparsable configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace beamsim
