#pragma once

#include <stdexcept>
#include <string>

namespace ivhs {

// Base of every error raised by the engine. kind() is the stable name that
// ends up in the "error" block of a report.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define IVHS_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                          \
   public:                                                             \
    using Error::Error;                                                \
    const char* kind() const noexcept override { return #Name; }       \
  }

IVHS_DEFINE_ERROR(FieldMismatch);
IVHS_DEFINE_ERROR(ShapeError);
IVHS_DEFINE_ERROR(CharacteristicConflict);
IVHS_DEFINE_ERROR(NotSingular);
IVHS_DEFINE_ERROR(MissingConditions);
IVHS_DEFINE_ERROR(InternalInconsistency);
IVHS_DEFINE_ERROR(GenusNegative);
IVHS_DEFINE_ERROR(DegreeError);
IVHS_DEFINE_ERROR(ConfigError);

#undef IVHS_DEFINE_ERROR

}  // namespace ivhs
