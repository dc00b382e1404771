#pragma once

#include <stdexcept>
#include <string>

namespace subshear {

// Every failure raised by the library derives from Error, so callers that do
// not care about the category can catch a single type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SUBSHEAR_DEFINE_ERROR(Name)        \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

SUBSHEAR_DEFINE_ERROR(DomainError);
SUBSHEAR_DEFINE_ERROR(SignatureError);
SUBSHEAR_DEFINE_ERROR(SingularMetricError);
SUBSHEAR_DEFINE_ERROR(DimensionMismatch);
SUBSHEAR_DEFINE_ERROR(NotSpacelikeError);
SUBSHEAR_DEFINE_ERROR(DegenerateFrameError);
SUBSHEAR_DEFINE_ERROR(DegenerateNormalError);
SUBSHEAR_DEFINE_ERROR(NotNormalError);
SUBSHEAR_DEFINE_ERROR(ZeroVectorError);
SUBSHEAR_DEFINE_ERROR(NoDirectionError);
SUBSHEAR_DEFINE_ERROR(NotCommutingError);
SUBSHEAR_DEFINE_ERROR(NoRootError);
SUBSHEAR_DEFINE_ERROR(ConfigError);

#undef SUBSHEAR_DEFINE_ERROR

}  // namespace subshear
