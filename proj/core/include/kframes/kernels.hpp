#pragma once

#include "kframes/disk_geometry.hpp"
#include "kframes/hermitian.hpp"
#include "kframes/positive_operator.hpp"
#include "kframes/truncation.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kframes {

inline constexpr double kDegenerateTol = 1e-12;

/// Coefficients of the Szego kernel k_w in the monomial basis,
/// coeffs[n] = conj(w)^n, optionally scaled to unit norm.
struct KernelVector {
  CVector coeffs;
  DiskPoint point;
  bool normalized = false;
};

struct Provenance {
  std::string space = "H2";  // "H2" or "H(P)"
  std::optional<std::string> operator_id;
  std::vector<int> labels;
  std::vector<DiskPoint> points;
  std::vector<std::string> notes;
};

/// Matrix of inner products <f_j, f_i> together with where it came from.
struct Grammian {
  HermitianMatrix matrix;
  Provenance provenance;
  bool normalized = false;
  /// Coefficient-space truncation estimate, 0 for closed forms.
  double truncation_error = 0.0;

  Eigen::Index dim() const noexcept { return matrix.dim(); }
};

/// Normalized Szego Grammian in closed form:
///   G_ij = sqrt((1-|z_i|^2)(1-|z_j|^2)) / (1 - z_i conj(z_j)).
Grammian szego_gram(const PointSequence& seq);

KernelVector kernel_vector(const DiskPoint& w, const TruncationContext& ctx, bool normalize);

/// N x m matrix whose columns are the (normalized) kernel vectors of seq.
CMatrix kernel_matrix(const PointSequence& seq, const TruncationContext& ctx, bool normalize);

/// Grammian of the normalized H(P) kernel functions. Since
/// <P^{1/2} k_j, P^{1/2} k_i> = k_i* P k_j, no square root is formed.
/// Throws DegenerateKernel when ||P^{1/2} k_{z_i}|| <= degenerate_tol.
Grammian range_space_gram(const PositiveOperator& p, const PointSequence& seq, const TruncationContext& ctx,
                          double degenerate_tol = kDegenerateTol);

/// Grammian (<A v_j, A v_i>) of the image of the normalized kernel vectors
/// under an arbitrary N x N matrix A; the sequence {A k~_{z_i}}.
Grammian image_gram(const CMatrix& a, const PointSequence& seq, const TruncationContext& ctx,
                    std::optional<std::string> operator_id = std::nullopt);

/// sum_{n<N} p_n (z conj(w))^n, the H(P) kernel for diagonal P.
cplx weighted_hardy_kernel(std::span<const double> weights, const DiskPoint& z, const DiskPoint& w);

}  // namespace kframes
