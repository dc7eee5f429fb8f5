#pragma once

#include <stdexcept>
#include <string>

namespace rlah {

// Base of every error raised by the library. `kind()` is the stable,
// machine-readable name used in CLI error records.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

#define RLAH_DEFINE_ERROR(Name)                                       \
  class Name : public Error {                                         \
   public:                                                            \
    using Error::Error;                                               \
    const char* kind() const noexcept override { return #Name; }     \
  };

RLAH_DEFINE_ERROR(InvalidParameter)
RLAH_DEFINE_ERROR(InadmissibleParameters)
RLAH_DEFINE_ERROR(CapacityExceeded)
RLAH_DEFINE_ERROR(DomainError)
RLAH_DEFINE_ERROR(DegenerateSample)

#undef RLAH_DEFINE_ERROR

}  // namespace rlah
