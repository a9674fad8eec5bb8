#pragma once

#include <stdexcept>
#include <string>

namespace qng {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QNG_DECLARE_ERROR(Name)            \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

QNG_DECLARE_ERROR(ParameterOutOfRange);
QNG_DECLARE_ERROR(BasisMismatch);
QNG_DECLARE_ERROR(ZeroState);
QNG_DECLARE_ERROR(CutoffTooSmall);
QNG_DECLARE_ERROR(LeakageTooLarge);
QNG_DECLARE_ERROR(ObjectiveNonFinite);
QNG_DECLARE_ERROR(InvalidConfig);
QNG_DECLARE_ERROR(NotDerived);

#undef QNG_DECLARE_ERROR

}  // namespace qng
