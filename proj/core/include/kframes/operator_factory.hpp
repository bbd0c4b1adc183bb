#pragma once

#include "kframes/disk_geometry.hpp"
#include "kframes/hermitian.hpp"
#include "kframes/inner_function.hpp"
#include "kframes/positive_operator.hpp"
#include "kframes/truncation.hpp"

#include <set>
#include <span>
#include <vector>

namespace kframes {

inline constexpr double kIdempotencyLimit = 1e-6;

/// Lower-triangular N x N matrix of multiplication by phi:
/// entry (m, n) = c_{m-n}. Coefficients are generated at order N + buffer.
CMatrix toeplitz_matrix(const InnerFunction& phi, const TruncationContext& ctx);

PositiveOperator identity_operator(int n);

/// Projection onto phi H^2, P = T_phi T_phi*, compressed to N.
/// Throws TruncationTooCoarse when ||P^2 - P||_inf > 1e-6.
PositiveOperator projection_phi_H2(const InnerFunction& phi, const TruncationContext& ctx);

/// Projection onto the model space H^2 (-) phi H^2, i.e. I - P_phi.
PositiveOperator projection_model_space(const InnerFunction& phi, const TruncationContext& ctx);

/// Projection onto span{z^j : j not excluded}. Throws IndexOutOfRange.
PositiveOperator projection_monomial_span(const std::set<int>& excluded, int n);

/// Projection onto the span of the constants and phi H^2.
PositiveOperator projection_c_plus_phi(const InnerFunction& phi, const TruncationContext& ctx);

/// Projection whose kernel is spanned by the given inner functions
/// (each viewed as a unit vector of H^2).
PositiveOperator projection_orthogonal_to(std::span<const InnerFunction> kernel_spanners, const TruncationContext& ctx);

/// diag(p_0..p_{N-1}); throws NegativeWeight. Contraction iff all p_n <= 1.
PositiveOperator diagonal_operator(std::span<const double> weights);

/// Wraps an arbitrary PSD matrix.
PositiveOperator custom_operator(const HermitianMatrix& m, std::string id = "custom");

/// Positive P with (<P k~_{z_j}, P k~_{z_i}>) = Q, supported on the span of
/// the normalized kernel vectors:
///   P = sqrt(V G^{-1} Q G^{-1} V*),  G = V* V.
/// Throws DuplicatePoint, IllConditionedGram (lambda_min(G) < 1e-8), NotPSD,
/// InvalidArgument (some Q_ii < delta or delta <= 0).
PositiveOperator st_construct(const HermitianMatrix& q, const PointSequence& seq, const TruncationContext& ctx,
                              double delta);

struct StRoundtrip {
  double roundtrip_error = 0.0;  // ||Q - (<P k~_j, P k~_i>)||_inf
  double min_norm_sq = 0.0;      // min_i ||P k~_i||^2
};

StRoundtrip st_roundtrip(const PositiveOperator& p, const HermitianMatrix& q, const PointSequence& seq,
                         const TruncationContext& ctx);

/// max |P t - t| over the leading columns t of T_phi (index < N/4): a finite
/// witness for phi H^2 contained in Ran(P).
double containment_defect(const PositiveOperator& p, const InnerFunction& phi, const TruncationContext& ctx);

bool contains_phi_H2(const PositiveOperator& p, const InnerFunction& phi, const TruncationContext& ctx,
                     double tol = 1e-8);

}  // namespace kframes
