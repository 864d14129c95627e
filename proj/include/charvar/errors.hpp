#pragma once

#include <stdexcept>
#include <string>

namespace charvar {

// Base for every error raised by the library. The CLI maps these to exit
// code 2 (usage/parse) or reports them as failed checks.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CHARVAR_DEFINE_ERROR(Name)              \
  class Name : public Error {                   \
   public:                                      \
    explicit Name(const std::string& what)      \
        : Error(std::string(#Name ": ") + what) {} \
  }

CHARVAR_DEFINE_ERROR(InvalidElementError);
CHARVAR_DEFINE_ERROR(MalformedWordError);
CHARVAR_DEFINE_ERROR(NotInStratumError);
CHARVAR_DEFINE_ERROR(InvalidParameterError);
CHARVAR_DEFINE_ERROR(InvalidMoveError);
CHARVAR_DEFINE_ERROR(ValidationError);
CHARVAR_DEFINE_ERROR(ShapeError);
CHARVAR_DEFINE_ERROR(OutOfNeighborhoodError);
CHARVAR_DEFINE_ERROR(SmoothnessConditionError);
CHARVAR_DEFINE_ERROR(UnsupportedCompositionError);
CHARVAR_DEFINE_ERROR(ConfigurationError);
CHARVAR_DEFINE_ERROR(ParseError);

#undef CHARVAR_DEFINE_ERROR

}  // namespace charvar
