#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bellcorr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Input whose shape is wrong (e.g. a value array whose length is not a power of two).
class MalformedInputError : public Error {
   public:
    MalformedInputError(const std::string &what, size_t observed_length)
        : Error(what), observed_length_(observed_length) {}
    size_t observed_length() const { return observed_length_; }

   private:
    size_t observed_length_;
};

/// Input with the right shape but invalid content (normalization, ranges, mismatched sizes).
class ValidationError : public Error {
   public:
    using Error::Error;
};

/// A computation refused because it would exceed a configured size guard.
class ResourceLimitError : public Error {
   public:
    ResourceLimitError(const std::string &what, int limit) : Error(what), limit_(limit) {}
    int limit() const { return limit_; }

   private:
    int limit_;
};

/// Raised when an optimum is requested on a landscape that is identically zero.
class NoOptimumError : public Error {
   public:
    using Error::Error;
};

}  // namespace bellcorr
