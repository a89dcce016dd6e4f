#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kloost {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define KLOOST_ERROR(Name)          \
  struct Name : Error {             \
    using Error::Error;             \
  };

KLOOST_ERROR(NotPrime)
KLOOST_ERROR(NotAUnit)
KLOOST_ERROR(ZeroModulus)
KLOOST_ERROR(ZeroInput)
KLOOST_ERROR(Overflow)
KLOOST_ERROR(LevelTooSmall)
KLOOST_ERROR(LevelTooLarge)
KLOOST_ERROR(PrimeMismatch)
KLOOST_ERROR(NotInStratum)
KLOOST_ERROR(BadIndex)
KLOOST_ERROR(LengthMismatch)
KLOOST_ERROR(SingularMatrix)
KLOOST_ERROR(DegeneratePattern)
KLOOST_ERROR(NoBezout)
KLOOST_ERROR(InvalidArgument)

#undef KLOOST_ERROR

// Carries the exact number of terms that would have been needed.
struct BudgetExceeded : Error {
  BudgetExceeded(std::int64_t required, std::int64_t budget)
      : Error("term budget exceeded: need " + std::to_string(required) +
              ", budget " + std::to_string(budget)),
        required(required),
        budget(budget) {}
  std::int64_t required;
  std::int64_t budget;
};

}  // namespace kloost
