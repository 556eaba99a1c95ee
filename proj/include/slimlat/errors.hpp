#pragma once

#include <stdexcept>
#include <string>

namespace slimlat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SLIMLAT_ERROR(Name)                  \
  class Name : public Error {                \
   public:                                   \
    explicit Name(const std::string& what)   \
        : Error(std::string(#Name ": ") + what) {} \
  }

SLIMLAT_ERROR(ParseError);
SLIMLAT_ERROR(ValidationError);
SLIMLAT_ERROR(NotIncomparable);
SLIMLAT_ERROR(InconsistencyError);
SLIMLAT_ERROR(NuDomainError);
SLIMLAT_ERROR(NotSlim);
SLIMLAT_ERROR(NotIndecomposable);
SLIMLAT_ERROR(TooSmall);
SLIMLAT_ERROR(NotDistributiveCell);
SLIMLAT_ERROR(NotSlimRectangular);
SLIMLAT_ERROR(IncompatibleTriplet);
SLIMLAT_ERROR(NotPartialOrder);
SLIMLAT_ERROR(IoError);

#undef SLIMLAT_ERROR

}  // namespace slimlat
