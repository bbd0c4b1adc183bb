#pragma once

#include "kframes/disk_geometry.hpp"
#include "kframes/hermitian.hpp"

#include <vector>

namespace kframes {

/// Finite Blaschke product times z^m:
///
///   phi(z) = u * z^m * prod_k (|a_k| / a_k) (a_k - z) / (1 - conj(a_k) z)
///
/// Zeros at the origin are folded into m so that every listed zero is
/// nonzero and the per-factor gauge |a|/a is defined; with m = 0 this makes
/// phi(0) real and nonnegative when u = 1.
class InnerFunction {
 public:
  InnerFunction() = default;
  InnerFunction(std::vector<DiskPoint> zeros, int monomial_power = 0, cplx unimodular = {1.0, 0.0});

  static InnerFunction monomial(int power) { return InnerFunction({}, power); }
  static InnerFunction blaschke_factor(DiskPoint a) { return InnerFunction({a}); }

  const std::vector<DiskPoint>& zeros() const noexcept { return zeros_; }
  int monomial_power() const noexcept { return m_; }
  cplx unimodular() const noexcept { return u_; }
  /// Number of zeros counted with multiplicity, including the z^m part.
  int degree() const noexcept { return m_ + static_cast<int>(zeros_.size()); }

  /// Product formula, no series.
  cplx operator()(cplx z) const;

  /// Taylor coefficients c_0..c_{count-1} at the origin.
  CVector taylor_coefficients(Eigen::Index count) const;

  InnerFunction operator*(const InnerFunction& other) const;

 private:
  std::vector<DiskPoint> zeros_;
  int m_ = 0;
  cplx u_{1.0, 0.0};
};

cplx evaluate_inner(const InnerFunction& phi, const DiskPoint& z);

}  // namespace kframes
