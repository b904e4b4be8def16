#pragma once

#include <stdexcept>
#include <string>

namespace monodromy {

// Error taxonomy shared by all modules. Every failure mode that callers are
// expected to recover from (domain guards, conditioning, integrator trouble)
// has its own type so drivers can record the category in reports.

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonDiagonalizable : Error { using Error::Error; };
struct PoleHit           : Error { using Error::Error; };
struct DegenerateA0      : Error { using Error::Error; };
struct BaseOnRay         : Error { using Error::Error; };
struct Resonant          : Error { using Error::Error; };
struct SeedAccuracy      : Error { using Error::Error; };
struct IntegratorFailure : Error { using Error::Error; };
struct TriangularityViolation : Error { using Error::Error; };
struct MembershipViolation    : Error { using Error::Error; };
struct ConstraintViolation    : Error { using Error::Error; };
struct OutsideBigCell    : Error { using Error::Error; };
struct LogBranch         : Error { using Error::Error; };
struct SingularValue     : Error { using Error::Error; };
struct FDStepTooLarge    : Error { using Error::Error; };
struct NotComposable     : Error { using Error::Error; };
struct ConfigError       : Error { using Error::Error; };

}  // namespace monodromy
