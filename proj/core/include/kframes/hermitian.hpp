#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace kframes {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kPsdClipTol = 1e-10;

/// Dense complex Hermitian matrix. The constructor symmetrizes its input,
/// H <- (H + H*) / 2, and rejects inputs whose skew part is larger than
/// 1e-8 relative to the largest entry.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m);

  static HermitianMatrix identity(Eigen::Index n);
  static HermitianMatrix zero(Eigen::Index n);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const CMatrix& matrix() const noexcept { return m_; }
  std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  CMatrix m_;
};

struct EigenExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  /// Smallest eigenvalue above rank_tol * lambda_max; lambda_max if none is.
  double smallest_above = 0.0;
  double rank_tol = kDefaultRankTol;
};

/// All eigenvalues in ascending order.
RVector eigenvalues(const HermitianMatrix& h);

EigenExtremes eig_extremes(const HermitianMatrix& h, double rank_tol = kDefaultRankTol);

double lambda_min(const HermitianMatrix& h);
double lambda_max(const HermitianMatrix& h);

/// Number of eigenvalues above rank_tol * lambda_max.
Eigen::Index numerical_rank(const HermitianMatrix& h, double rank_tol = kDefaultRankTol);

/// Hermitian PSD square root. Negative eigenvalues down to
/// -1e-10 * lambda_max are clipped to zero; anything lower raises NotPSD.
HermitianMatrix psd_sqrt(const HermitianMatrix& h);

/// Inverse through the eigendecomposition. Raises IllConditionedGram when
/// lambda_min falls below min_eigenvalue.
HermitianMatrix guarded_inverse(const HermitianMatrix& h, double min_eigenvalue);

/// A <= B in the Loewner order: lambda_min(B - A) >= -tol.
bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol);

/// lambda_min(B - A); the slack behind loewner_leq.
double loewner_gap(const HermitianMatrix& a, const HermitianMatrix& b);

/// Principal submatrix on the given row/column positions.
HermitianMatrix principal_submatrix(const HermitianMatrix& h, const std::vector<Eigen::Index>& positions);

/// D H D* for diagonal D = diag(d).
HermitianMatrix diagonal_congruence(const HermitianMatrix& h, const CVector& d);

/// Largest absolute entry.
double max_abs(const CMatrix& m);

}  // namespace kframes
