#pragma once

#include "kframes/kernels.hpp"

#include <span>

namespace kframes {

inline constexpr double kDefaultRieszTol = 1e-8;

/// Frame-theoretic constants read off a Grammian's spectrum. The booleans
/// only summarize; for finite distinct point sets the constants carry the
/// information.
struct BoundsReport {
  double bessel_B = 0.0;          // lambda_max
  double riesz_c = 0.0;           // lambda_min
  double frame_A = 0.0;           // smallest eigenvalue above the rank cutoff
  double lower_norm_delta = 0.0;  // min_i ||f_i|| = min sqrt(G_ii)
  bool is_bessel = false;
  bool is_bounded_below = false;
  bool is_riesz = false;
  bool is_frame = false;
  double riesz_tol = kDefaultRieszTol;
  double rank_tol = kDefaultRankTol;
};

/// Throws NotPSD when lambda_min < -1e-10 * lambda_max.
BoundsReport analyze(const Grammian& g, double riesz_tol = kDefaultRieszTol, double rank_tol = kDefaultRankTol);

/// D G D*. Throws SingularDiagonal when some d_i == 0, DimensionMismatch.
Grammian congruence_diag(const Grammian& g, std::span<const cplx> d);

/// Principal submatrix on the given labels, in the given order.
/// Throws EmptySubset, UnknownLabel.
Grammian compress(const Grammian& g, std::span<const int> labels);

}  // namespace kframes
