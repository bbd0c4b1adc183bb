#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace kframes {

using cplx = std::complex<double>;

/// A point of the open unit disk. Construction rejects |z| >= 1 and
/// non-finite values.
class DiskPoint {
 public:
  DiskPoint() = default;
  explicit DiskPoint(cplx value);
  DiskPoint(double re, double im) : DiskPoint(cplx{re, im}) {}

  cplx value() const noexcept { return value_; }
  double modulus() const noexcept { return std::abs(value_); }
  /// 1 - |z|^2, evaluated as (1-|z|)(1+|z|) to keep digits near the boundary.
  double one_minus_modulus_sq() const noexcept;

  friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

 private:
  cplx value_{0.0, 0.0};
};

/// Finite ordered list of disk points with integer labels. Labels default to
/// 0..n-1 and survive subsetting so partitions can refer back to the input.
class PointSequence {
 public:
  explicit PointSequence(std::vector<DiskPoint> points);
  PointSequence(std::vector<DiskPoint> points, std::vector<int> labels);

  static PointSequence from_complex(std::span<const cplx> values);

  std::size_t size() const noexcept { return points_.size(); }
  const DiskPoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<DiskPoint>& points() const noexcept { return points_; }
  const std::vector<int>& labels() const noexcept { return labels_; }

  /// Positions (not labels) selected in the given order.
  PointSequence subset(std::span<const std::size_t> positions) const;
  PointSequence prefix(std::size_t count) const;
  PointSequence appended(DiskPoint p) const;

  double max_modulus() const noexcept;

 private:
  std::vector<DiskPoint> points_;
  std::vector<int> labels_;
};

struct CarlesonReport {
  std::vector<double> per_index_products;
  double infimum = 1.0;
  /// Threshold the query was asked about; satisfied iff infimum >= it.
  double satisfied_at = 0.0;
  bool satisfied = true;
  /// Set when some product fell below exp(-700) and was clamped to 0.
  bool underflow = false;
};

/// |z - w| / |1 - conj(z) w|.
double pseudo_hyperbolic(const DiskPoint& z, const DiskPoint& w) noexcept;

/// The disk automorphism u -> (a - u) / (1 - conj(a) u).
DiskPoint mobius(const DiskPoint& a, const DiskPoint& u);

/// Per-index products of pseudo-hyperbolic distances to all other points,
/// accumulated in log space. Throws DuplicatePoint on exact coincidences.
CarlesonReport carleson_constants(const PointSequence& seq, double delta = 0.0);

/// Sum of (1 - |z_i|).
double blaschke_condition_sum(const PointSequence& seq) noexcept;

/// Minimum pairwise pseudo-hyperbolic distance. Throws SingletonSequence for
/// fewer than two points.
double separation_constant(const PointSequence& seq);

/// Throws DuplicatePoint if two points compare equal.
void require_distinct(const PointSequence& seq);

}  // namespace kframes
