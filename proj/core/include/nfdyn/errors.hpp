#ifndef NFDYN_ERRORS_HPP
#define NFDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nfdyn {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define NFDYN_DEFINE_ERROR(Name)                                   \
  struct Name : Error {                                            \
    explicit Name(const std::string& msg = #Name) : Error(msg) {}  \
  }

NFDYN_DEFINE_ERROR(NotMonic);
NFDYN_DEFINE_ERROR(NotIrreducible);
NFDYN_DEFINE_ERROR(FieldMismatch);
NFDYN_DEFINE_ERROR(ZeroInput);
NFDYN_DEFINE_ERROR(ZeroDivisor);
NFDYN_DEFINE_ERROR(DegreeLimit);
NFDYN_DEFINE_ERROR(TooManyPolynomials);
NFDYN_DEFINE_ERROR(ZeroModulus);
NFDYN_DEFINE_ERROR(PreconditionFailed);
NFDYN_DEFINE_ERROR(NonCommuting);
NFDYN_DEFINE_ERROR(NotCommuting);
NFDYN_DEFINE_ERROR(NotUnipotent);
NFDYN_DEFINE_ERROR(EmptyBox);
NFDYN_DEFINE_ERROR(EmptyRange);
NFDYN_DEFINE_ERROR(DegenerateShifts);
NFDYN_DEFINE_ERROR(ParseError);
NFDYN_DEFINE_ERROR(ValidationError);
NFDYN_DEFINE_ERROR(TaskError);

#undef NFDYN_DEFINE_ERROR

}  // namespace nfdyn

#endif
