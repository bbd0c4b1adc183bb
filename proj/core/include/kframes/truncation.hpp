#pragma once

namespace kframes {

/// Finite stand-in for H^2: the monomial basis z^0..z^{order-1}. The buffer
/// is the number of extra Taylor orders carried before compression.
struct TruncationContext {
  int order = 256;
  int buffer = 64;

  /// Coefficient-space tail of a kernel vector at radius r:
  /// r^order / (1 - r^2).
  double tail_bound(double radius) const;

  void validate() const;
};

}  // namespace kframes
