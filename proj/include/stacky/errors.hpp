#pragma once

#include <stdexcept>
#include <string>

namespace stacky {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct TooManyVariables : Error { using Error::Error; };

struct EmptyPolytope : Error { using Error::Error; };
struct UnboundedPolytope : Error { using Error::Error; };

struct InvalidInvariants : Error { using Error::Error; };
struct InvalidStackyPolytope : Error { using Error::Error; };
struct InvalidFan : Error { using Error::Error; };
struct StratumNotInFamily : Error { using Error::Error; };
struct RankDeficientRho : Error { using Error::Error; };
struct NotRegularValue : Error { using Error::Error; };
struct EmptyOrUnboundedPolytope : Error { using Error::Error; };
struct NotFreeModule : Error { using Error::Error; };
struct InfeasibleSlice : Error { using Error::Error; };

// Input document diagnostics carry the offending field path in the message.
struct SchemaError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct RationalFormatError : Error { using Error::Error; };

}  // namespace stacky
