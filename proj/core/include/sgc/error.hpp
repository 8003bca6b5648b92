#pragma once

#include <stdexcept>
#include <string>

namespace sgc {

// Base of every error raised by the library. Subclasses name the failure;
// the message carries the details.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SGC_DEFINE_ERROR(Name)            \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

SGC_DEFINE_ERROR(NotPrime);
SGC_DEFINE_ERROR(DivisionByZero);
SGC_DEFINE_ERROR(FieldMismatch);
SGC_DEFINE_ERROR(FieldTooSmall);
SGC_DEFINE_ERROR(DimensionMismatch);
SGC_DEFINE_ERROR(InvalidConfig);
SGC_DEFINE_ERROR(WrongShape);
SGC_DEFINE_ERROR(ShapeMismatch);
SGC_DEFINE_ERROR(NotDecodable);
SGC_DEFINE_ERROR(DecodeFailure);
SGC_DEFINE_ERROR(TooLarge);
SGC_DEFINE_ERROR(NotSymmetric);
SGC_DEFINE_ERROR(VerificationFailed);
SGC_DEFINE_ERROR(Infeasible);
SGC_DEFINE_ERROR(Unsolved);

#undef SGC_DEFINE_ERROR

}  // namespace sgc
