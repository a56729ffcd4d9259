#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hc {

/// Base of every error raised by the library. `name()` is the stable
/// identifier the CLI surfaces to the user.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define HC_DEFINE_ERROR(Type)                                   \
  class Type : public Error {                                  \
   public:                                                      \
    explicit Type(const std::string& what) : Error(#Type, what) {} \
  }

HC_DEFINE_ERROR(InvalidParameter);
HC_DEFINE_ERROR(SideMismatch);
HC_DEFINE_ERROR(DegenerateReset);
HC_DEFINE_ERROR(WrongDegree);
HC_DEFINE_ERROR(DegreeOverflow);
HC_DEFINE_ERROR(WrongRegime);
HC_DEFINE_ERROR(OutOfDomain);
HC_DEFINE_ERROR(InsufficientPrecision);
HC_DEFINE_ERROR(EquilibriumReached);
HC_DEFINE_ERROR(SpecError);

#undef HC_DEFINE_ERROR

/// A branch value at an ambiguous point of the return map.
struct BranchCandidate {
  int branch = 0;
  double value = 0.0;
};

/// Raised when a return-map query lands on a point where branch membership
/// is ambiguous. Carries the values of the adjacent branches; the return map
/// is continuous, so they agree up to rounding.
class BoundaryPoint : public Error {
 public:
  BoundaryPoint(double y, std::vector<BranchCandidate> candidates)
      : Error("BoundaryPoint", "y = " + std::to_string(y) + " is a branch boundary"),
        y_(y),
        candidates_(std::move(candidates)) {}
  double y() const noexcept { return y_; }
  const std::vector<BranchCandidate>& candidates() const noexcept { return candidates_; }

 private:
  double y_;
  std::vector<BranchCandidate> candidates_;
};

}  // namespace hc
