#include "weingarten/params.hpp"

#include <cmath>

#include "weingarten/error.hpp"

namespace weingarten {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::GuardViolation: return "GuardViolation";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::BoundViolated: return "BoundViolated";
    case ErrorKind::OutOfScopeParams: return "OutOfScopeParams";
    case ErrorKind::NotCircleCase: return "NotCircleCase";
    case ErrorKind::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorKind::InvariantViolated: return "InvariantViolated";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(DiscriminantClass c) {
  switch (c) {
    case DiscriminantClass::Elliptic: return "elliptic";
    case DiscriminantClass::Tube: return "tube";
    case DiscriminantClass::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

DiscriminantClass WeingartenParams::discriminant_class() const {
  const double d = discriminant();
  if (d > 0.0) return DiscriminantClass::Elliptic;
  if (d < 0.0) return DiscriminantClass::Hyperbolic;
  return DiscriminantClass::Tube;
}

WeingartenParams WeingartenParams::normalized() const {
  if (c == 0.0 || !std::isfinite(c)) {
    throw Error(ErrorKind::InvalidParams, "cannot normalize a relation with c = 0");
  }
  return {a / c, b / c, 1.0};
}

}  // namespace weingarten
