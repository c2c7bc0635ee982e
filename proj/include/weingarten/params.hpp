#pragma once

#include <string_view>

namespace weingarten {

enum class DiscriminantClass { Elliptic, Tube, Hyperbolic };

std::string_view to_string(DiscriminantClass c);

/// Coefficients of the linear relation aH + bK = c.
///
/// The class is fixed by the sign of a^2 + 4bc; an exactly zero discriminant
/// is a tube.
struct WeingartenParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double discriminant() const { return a * a + 4.0 * b * c; }
  DiscriminantClass discriminant_class() const;

  /// Divides through by c so that the relation reads a'H + b'K = 1.
  /// Throws InvalidParams when c == 0.
  WeingartenParams normalized() const;
};

}  // namespace weingarten
