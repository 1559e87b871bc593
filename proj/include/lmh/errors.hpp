#pragma once

#include <stdexcept>
#include <string>

namespace lmh {

class error : public std::runtime_error {
public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

#define LMH_ERROR_TYPE(Name)                                                  \
  class Name : public error {                                                 \
  public:                                                                     \
    explicit Name(const std::string& msg) : error(#Name ": " + msg) {}        \
  }

LMH_ERROR_TYPE(DimensionMismatch);
LMH_ERROR_TYPE(NotNilpotent);
LMH_ERROR_TYPE(NotUnipotent);
LMH_ERROR_TYPE(NonCommuting);
LMH_ERROR_TYPE(UndecidedRMF);
LMH_ERROR_TYPE(NotInCone);
LMH_ERROR_TYPE(NotMHS);
LMH_ERROR_TYPE(NotInLieAlgebra);
LMH_ERROR_TYPE(OracleDisagreement);
LMH_ERROR_TYPE(WeakFanViolation);
LMH_ERROR_TYPE(NotSimplicial);
LMH_ERROR_TYPE(NotIntegralizable);
LMH_ERROR_TYPE(InvalidL);
LMH_ERROR_TYPE(FormatError);

#undef LMH_ERROR_TYPE

inline void require(bool cond, const char* what) {
  if (!cond) throw error(std::string("internal check failed: ") + what);
}

}  // namespace lmh
