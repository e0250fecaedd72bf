#pragma once

#include <stdexcept>
#include <string>

namespace eventqa {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data (a file, a dataset, a dump) is unusable. The CLI maps it to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace eventqa
