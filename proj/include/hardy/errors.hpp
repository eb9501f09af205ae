#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define HARDY_DEFINE_ERROR(Name) \
  struct Name : Error {          \
    using Error::Error;          \
  }

// tree construction
HARDY_DEFINE_ERROR(MultipleRoots);
HARDY_DEFINE_ERROR(CycleDetected);
HARDY_DEFINE_ERROR(DanglingParent);
HARDY_DEFINE_ERROR(InvalidVertex);

// parameters
HARDY_DEFINE_ERROR(InvalidExponent);
HARDY_DEFINE_ERROR(DimensionMismatch);
HARDY_DEFINE_ERROR(InvalidSize);
HARDY_DEFINE_ERROR(SizeCapExceeded);
HARDY_DEFINE_ERROR(InfeasibleModel);
HARDY_DEFINE_ERROR(InvalidLaw);
HARDY_DEFINE_ERROR(InvalidProfile);
HARDY_DEFINE_ERROR(InvalidSigma);
HARDY_DEFINE_ERROR(LengthMismatch);
HARDY_DEFINE_ERROR(DepthMismatch);

// solvers
HARDY_DEFINE_ERROR(TooLarge);
HARDY_DEFINE_ERROR(NonFiniteIterate);

// serialization
HARDY_DEFINE_ERROR(InvalidFile);

#undef HARDY_DEFINE_ERROR

}  // namespace hardy
