#pragma once

#include <stdexcept>
#include <string>

namespace odorbench {

// Base for every error raised by the library. Callers that only need to
// report a diagnostic can catch this; the subclasses map onto the distinct
// failure classes (bad shapes, bad data, bad configuration, I/O).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Signature lengths or level bounds disagree.
class InputShapeError : public Error {
 public:
  using Error::Error;
};

// Values that are out of range, non-finite or otherwise unusable.
class DataError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters, malformed noise strings, unsatisfiable requests.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace odorbench
