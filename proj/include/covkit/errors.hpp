#pragma once

#include <stdexcept>

namespace covkit {

// Base class for all library errors. The CLI maps IoError to exit code 2
// and every other Error to exit code 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct MalformedRecord : Error { using Error::Error; };
struct EmptyAnswer : Error { using Error::Error; };
struct NoSamples : Error { using Error::Error; };
struct EmptyTrainingSet : Error { using Error::Error; };
struct MissingRelationTable : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct KExceedsN : Error { using Error::Error; };
struct MLargerThanK : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct BaselineSaturated : Error { using Error::Error; };
struct DivisionByZeroCoverage : Error { using Error::Error; };
struct NTooLarge : Error { using Error::Error; };

}  // namespace covkit
