#include "kframes/hermitian.hpp"

#include "kframes/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace kframes {

namespace {

constexpr double kSkewTol = 1e-8;

using Solver = Eigen::SelfAdjointEigenSolver<CMatrix>;

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()) + " differ");
  }
}

}  // namespace

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "Hermitian matrix must be square");
  if (m.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "Hermitian matrix must be nonempty");
  if (!m.allFinite()) throw Error(ErrorCode::NonHermitian, "matrix has non-finite entries");
  const double scale = std::max(1.0, max_abs(m));
  const double skew = max_abs(m - m.adjoint()) / 2.0;
  if (skew > kSkewTol * scale) {
    throw Error(ErrorCode::NonHermitian, "skew-Hermitian part " + std::to_string(skew) + " exceeds tolerance");
  }
  m_ = (m + m.adjoint()) / 2.0;
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index n) { return HermitianMatrix(CMatrix::Identity(n, n)); }

HermitianMatrix HermitianMatrix::zero(Eigen::Index n) { return HermitianMatrix(CMatrix::Zero(n, n)); }

RVector eigenvalues(const HermitianMatrix& h) {
  Solver solver(h.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

EigenExtremes eig_extremes(const HermitianMatrix& h, double rank_tol) {
  const RVector ev = eigenvalues(h);
  EigenExtremes out;
  out.rank_tol = rank_tol;
  out.lambda_min = ev(0);
  out.lambda_max = ev(ev.size() - 1);
  out.smallest_above = out.lambda_max;
  const double cutoff = rank_tol * out.lambda_max;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cutoff) {
      out.smallest_above = ev(i);
      break;
    }
  }
  return out;
}

double lambda_min(const HermitianMatrix& h) { return eigenvalues(h)(0); }

double lambda_max(const HermitianMatrix& h) {
  const RVector ev = eigenvalues(h);
  return ev(ev.size() - 1);
}

Eigen::Index numerical_rank(const HermitianMatrix& h, double rank_tol) {
  const RVector ev = eigenvalues(h);
  const double cutoff = rank_tol * ev(ev.size() - 1);
  return static_cast<Eigen::Index>((ev.array() > cutoff).count());
}

HermitianMatrix psd_sqrt(const HermitianMatrix& h) {
  Solver solver(h.matrix());
  RVector ev = solver.eigenvalues();
  const double lmax = ev(ev.size() - 1);
  const double floor = -kPsdClipTol * std::max(lmax, 0.0);
  if (ev(0) < floor) {
    throw Error(ErrorCode::NotPSD, "lambda_min " + std::to_string(ev(0)) + " below clip threshold");
  }
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(ev(i), 0.0));
  const CMatrix& u = solver.eigenvectors();
  return HermitianMatrix(u * ev.asDiagonal() * u.adjoint());
}

HermitianMatrix guarded_inverse(const HermitianMatrix& h, double min_eigenvalue) {
  Solver solver(h.matrix());
  const RVector& ev = solver.eigenvalues();
  if (ev(0) < min_eigenvalue) {
    throw Error(ErrorCode::IllConditionedGram,
                "lambda_min " + std::to_string(ev(0)) + " below " + std::to_string(min_eigenvalue));
  }
  const CMatrix& u = solver.eigenvectors();
  return HermitianMatrix(u * ev.cwiseInverse().asDiagonal() * u.adjoint());
}

double loewner_gap(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b);
  return lambda_min(HermitianMatrix(b.matrix() - a.matrix()));
}

bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  return loewner_gap(a, b) >= -tol;
}

HermitianMatrix principal_submatrix(const HermitianMatrix& h, const std::vector<Eigen::Index>& positions) {
  if (positions.empty()) throw Error(ErrorCode::EmptySubset, "principal submatrix of an empty index set");
  const auto k = static_cast<Eigen::Index>(positions.size());
  CMatrix sub(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      const auto i = positions[static_cast<std::size_t>(a)];
      const auto j = positions[static_cast<std::size_t>(b)];
      if (i < 0 || i >= h.dim() || j < 0 || j >= h.dim()) {
        throw Error(ErrorCode::IndexOutOfRange, "principal submatrix index out of range");
      }
      sub(a, b) = h(i, j);
    }
  }
  return HermitianMatrix(sub);
}

HermitianMatrix diagonal_congruence(const HermitianMatrix& h, const CVector& d) {
  if (d.size() != h.dim()) throw Error(ErrorCode::DimensionMismatch, "diagonal length differs from dimension");
  return HermitianMatrix(d.asDiagonal() * h.matrix() * d.conjugate().asDiagonal());
}

}  // namespace kframes
