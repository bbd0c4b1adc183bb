#include "kframes/operator_factory.hpp"

#include "kframes/errors.hpp"
#include "kframes/kernels.hpp"

#include <Eigen/QR>

#include <cmath>
#include <sstream>

namespace kframes {

namespace {

constexpr double kCPlusPhiIdempotency = 1e-8;
constexpr double kGramConditionFloor = 1e-8;

std::string describe(const InnerFunction& phi) {
  std::ostringstream os;
  os.precision(6);
  os << "phi[m=" << phi.monomial_power() << ";zeros=";
  for (std::size_t k = 0; k < phi.zeros().size(); ++k) {
    const cplx a = phi.zeros()[k].value();
    os << (k ? "," : "") << "(" << a.real() << "," << a.imag() << ")";
  }
  os << "]";
  return os.str();
}

double idempotency_defect(const CMatrix& p) { return max_abs(p * p - p); }

PositiveOperator make_projection(const CMatrix& p, std::string id, OperatorKind kind, double limit) {
  const double defect = idempotency_defect(p);
  if (defect > limit) {
    throw Error(ErrorCode::TruncationTooCoarse,
                id + ": idempotency defect " + std::to_string(defect) + " exceeds " + std::to_string(limit));
  }
  PositiveOperator op(HermitianMatrix(p), std::move(id), kind);
  op.with_idempotency_defect(defect);
  return op;
}

}  // namespace

CMatrix toeplitz_matrix(const InnerFunction& phi, const TruncationContext& ctx) {
  ctx.validate();
  const Eigen::Index n = ctx.order;
  const CVector c = phi.taylor_coefficients(n + ctx.buffer);
  CMatrix t = CMatrix::Zero(n, n);
  for (Eigen::Index col = 0; col < n; ++col) t.col(col).tail(n - col) = c.head(n - col);
  return t;
}

PositiveOperator identity_operator(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "identity dimension must be >= 1");
  return PositiveOperator(HermitianMatrix::identity(n), "identity", OperatorKind::identity);
}

PositiveOperator projection_phi_H2(const InnerFunction& phi, const TruncationContext& ctx) {
  // T_phi is lower triangular, so the leading N x N block of T T* only sees
  // the leading block of T: the compression is exact for any buffer.
  const CMatrix t = toeplitz_matrix(phi, ctx);
  return make_projection(t * t.adjoint(), "P_" + describe(phi), OperatorKind::projection_phiH2, kIdempotencyLimit);
}

PositiveOperator projection_model_space(const InnerFunction& phi, const TruncationContext& ctx) {
  const auto pphi = projection_phi_H2(phi, ctx);
  const CMatrix p = CMatrix::Identity(ctx.order, ctx.order) - pphi.matrix();
  return make_projection(p, "model_" + describe(phi), OperatorKind::projection_model, kIdempotencyLimit);
}

PositiveOperator projection_monomial_span(const std::set<int>& excluded, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  RVector d = RVector::Ones(n);
  std::ostringstream id;
  id << "monomial_span[excluded=";
  bool first = true;
  for (int j : excluded) {
    if (j < 0 || j >= n) {
      throw Error(ErrorCode::IndexOutOfRange, "excluded index " + std::to_string(j) + " outside [0, N)");
    }
    d(j) = 0.0;
    id << (first ? "" : ",") << j;
    first = false;
  }
  id << "]";
  CMatrix p = d.cast<cplx>().asDiagonal();
  return PositiveOperator(HermitianMatrix(p), id.str(), OperatorKind::projection_monomial);
}

PositiveOperator projection_c_plus_phi(const InnerFunction& phi, const TruncationContext& ctx) {
  const auto pphi = projection_phi_H2(phi, ctx);
  CMatrix p = pphi.matrix();
  // Gram-Schmidt the constant function against phi H^2.
  CVector residual = -p.col(0);
  residual(0) += 1.0;
  const double norm = residual.norm();
  if (norm > kDegenerateTol) {
    residual /= norm;
    p += residual * residual.adjoint();
  }
  return make_projection(p, "c_plus_" + describe(phi), OperatorKind::projection_c_plus_phi, kCPlusPhiIdempotency);
}

PositiveOperator projection_orthogonal_to(std::span<const InnerFunction> kernel_spanners, const TruncationContext& ctx) {
  ctx.validate();
  const Eigen::Index n = ctx.order;
  std::string id = "kernel_span[";
  if (kernel_spanners.empty()) return identity_operator(static_cast<int>(n));
  CMatrix f(n, static_cast<Eigen::Index>(kernel_spanners.size()));
  for (std::size_t k = 0; k < kernel_spanners.size(); ++k) {
    f.col(static_cast<Eigen::Index>(k)) = kernel_spanners[k].taylor_coefficients(n);
    id += (k ? ";" : "") + describe(kernel_spanners[k]);
  }
  id += "]";
  Eigen::HouseholderQR<CMatrix> qr(f);
  const CMatrix q = qr.householderQ() * CMatrix::Identity(n, f.cols());
  const CMatrix p = CMatrix::Identity(n, n) - q * q.adjoint();
  return make_projection(p, id, OperatorKind::custom, kIdempotencyLimit);
}

PositiveOperator diagonal_operator(std::span<const double> weights) {
  if (weights.empty()) throw Error(ErrorCode::InvalidArgument, "diagonal operator needs at least one weight");
  RVector d(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::NegativeWeight, "weight " + std::to_string(i) + " is negative or non-finite");
    }
    d(static_cast<Eigen::Index>(i)) = weights[i];
  }
  CMatrix p = d.cast<cplx>().asDiagonal();
  return PositiveOperator(HermitianMatrix(p), "diagonal", OperatorKind::diagonal);
}

PositiveOperator custom_operator(const HermitianMatrix& m, std::string id) {
  return PositiveOperator(m, std::move(id), OperatorKind::custom);
}

PositiveOperator st_construct(const HermitianMatrix& q, const PointSequence& seq, const TruncationContext& ctx,
                              double delta) {
  if (q.dim() != static_cast<Eigen::Index>(seq.size())) {
    throw Error(ErrorCode::DimensionMismatch, "Q dimension differs from the number of points");
  }
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  for (Eigen::Index i = 0; i < q.dim(); ++i) {
    if (q(i, i).real() < delta) {
      throw Error(ErrorCode::InvalidArgument, "Q(" + std::to_string(i) + "," + std::to_string(i) + ") below delta");
    }
  }
  const auto qex = eig_extremes(q);
  if (qex.lambda_min < -kPsdClipTol * std::max(qex.lambda_max, 0.0)) {
    throw Error(ErrorCode::NotPSD, "target Grammian has lambda_min " + std::to_string(qex.lambda_min));
  }
  require_distinct(seq);

  const CMatrix v = kernel_matrix(seq, ctx, true);
  const HermitianMatrix g(v.adjoint() * v);
  const HermitianMatrix g_inv = guarded_inverse(g, kGramConditionFloor);
  const CMatrix w = v * g_inv.matrix();
  const HermitianMatrix r(w * q.matrix() * w.adjoint());
  return PositiveOperator(psd_sqrt(r), "st", OperatorKind::st_constructed);
}

StRoundtrip st_roundtrip(const PositiveOperator& p, const HermitianMatrix& q, const PointSequence& seq,
                         const TruncationContext& ctx) {
  const Grammian g = image_gram(p.matrix(), seq, ctx, p.id());
  if (g.dim() != q.dim()) throw Error(ErrorCode::DimensionMismatch, "Q dimension differs from the number of points");
  StRoundtrip out;
  out.roundtrip_error = max_abs(q.matrix() - g.matrix.matrix());
  out.min_norm_sq = g.matrix.matrix().diagonal().real().minCoeff();
  return out;
}

double containment_defect(const PositiveOperator& p, const InnerFunction& phi, const TruncationContext& ctx) {
  if (p.dim() != ctx.order) throw Error(ErrorCode::DimensionMismatch, "operator dimension differs from truncation order");
  const CMatrix t = toeplitz_matrix(phi, ctx);
  const Eigen::Index cols = std::max<Eigen::Index>(1, ctx.order / 4);
  const CMatrix lead = t.leftCols(cols);
  return max_abs(p.matrix() * lead - lead);
}

bool contains_phi_H2(const PositiveOperator& p, const InnerFunction& phi, const TruncationContext& ctx, double tol) {
  return containment_defect(p, phi, ctx) <= tol;
}

}  // namespace kframes
