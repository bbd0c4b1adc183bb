#include "kframes/kernels.hpp"

#include "kframes/errors.hpp"

#include <cmath>

namespace kframes {

double TruncationContext::tail_bound(double radius) const {
  return std::pow(radius, order) / ((1.0 - radius) * (1.0 + radius));
}

void TruncationContext::validate() const {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "truncation order must be >= 1");
  if (buffer < 0) throw Error(ErrorCode::InvalidArgument, "truncation buffer must be >= 0");
}

Grammian szego_gram(const PointSequence& seq) {
  const auto n = static_cast<Eigen::Index>(seq.size());
  CMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& zi = seq[static_cast<std::size_t>(i)];
    g(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto& zj = seq[static_cast<std::size_t>(j)];
      const double scale = std::sqrt(zi.one_minus_modulus_sq() * zj.one_minus_modulus_sq());
      g(i, j) = scale / (1.0 - zi.value() * std::conj(zj.value()));
      g(j, i) = std::conj(g(i, j));
    }
  }
  Grammian out{HermitianMatrix(g), {}, true, 0.0};
  out.provenance.space = "H2";
  out.provenance.labels = seq.labels();
  out.provenance.points = seq.points();
  return out;
}

KernelVector kernel_vector(const DiskPoint& w, const TruncationContext& ctx, bool normalize) {
  ctx.validate();
  CVector c(ctx.order);
  const cplx wbar = std::conj(w.value());
  cplx power{1.0, 0.0};
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    c(n) = power;
    power *= wbar;
  }
  if (normalize) c /= c.norm();
  return KernelVector{std::move(c), w, normalize};
}

CMatrix kernel_matrix(const PointSequence& seq, const TruncationContext& ctx, bool normalize) {
  CMatrix v(ctx.order, static_cast<Eigen::Index>(seq.size()));
  for (std::size_t i = 0; i < seq.size(); ++i) {
    v.col(static_cast<Eigen::Index>(i)) = kernel_vector(seq[i], ctx, normalize).coeffs;
  }
  return v;
}

Grammian range_space_gram(const PositiveOperator& p, const PointSequence& seq, const TruncationContext& ctx,
                          double degenerate_tol) {
  if (p.dim() != ctx.order) {
    throw Error(ErrorCode::DimensionMismatch, "operator dimension " + std::to_string(p.dim()) +
                                                  " differs from truncation order " + std::to_string(ctx.order));
  }
  const CMatrix v = kernel_matrix(seq, ctx, false);
  CMatrix g = v.adjoint() * p.matrix() * v;
  const Eigen::Index n = g.rows();
  RVector norms(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sq = g(i, i).real();
    norms(i) = std::sqrt(std::max(sq, 0.0));
    if (norms(i) <= degenerate_tol) {
      throw Error(ErrorCode::DegenerateKernel,
                  "kernel function of point " + std::to_string(seq.labels()[static_cast<std::size_t>(i)]) +
                      " vanishes in H(P)");
    }
  }
  const RVector inv = norms.cwiseInverse();
  g = inv.asDiagonal() * g * inv.asDiagonal();
  g.diagonal().setOnes();

  Grammian out{HermitianMatrix(g), {}, true, ctx.tail_bound(seq.max_modulus())};
  out.provenance.space = "H(P)";
  out.provenance.operator_id = p.id();
  out.provenance.labels = seq.labels();
  out.provenance.points = seq.points();
  return out;
}

Grammian image_gram(const CMatrix& a, const PointSequence& seq, const TruncationContext& ctx,
                    std::optional<std::string> operator_id) {
  if (a.rows() != ctx.order || a.cols() != ctx.order) {
    throw Error(ErrorCode::DimensionMismatch, "operator dimension differs from truncation order");
  }
  const CMatrix image = a * kernel_matrix(seq, ctx, true);
  Grammian out{HermitianMatrix(image.adjoint() * image), {}, false, ctx.tail_bound(seq.max_modulus())};
  out.provenance.space = "H2";
  out.provenance.operator_id = std::move(operator_id);
  out.provenance.labels = seq.labels();
  out.provenance.points = seq.points();
  return out;
}

cplx weighted_hardy_kernel(std::span<const double> weights, const DiskPoint& z, const DiskPoint& w) {
  const cplx t = z.value() * std::conj(w.value());
  cplx power{1.0, 0.0};
  cplx sum{0.0, 0.0};
  for (double p : weights) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::WeightOutOfRange, "weight " + std::to_string(p) + " outside [0, 1]");
    }
    sum += p * power;
    power *= t;
  }
  return sum;
}

}  // namespace kframes
