#pragma once

#include "kframes/hermitian.hpp"

#include <string>
#include <string_view>

namespace kframes {

enum class OperatorKind {
  identity,
  diagonal,
  projection_phiH2,
  projection_model,
  projection_monomial,
  projection_c_plus_phi,
  st_constructed,
  custom,
};

std::string_view to_string(OperatorKind kind) noexcept;
OperatorKind operator_kind_from_string(std::string_view name);

/// A positive semidefinite operator on the truncated Hardy space, stored as
/// an N x N matrix in the monomial basis. Immutable once built.
class PositiveOperator {
 public:
  /// Checks PSD (lambda_min >= -1e-10 * lambda_max) and records the
  /// contraction flag. Throws NotPSD.
  PositiveOperator(HermitianMatrix matrix, std::string id, OperatorKind kind);

  const HermitianMatrix& hermitian() const noexcept { return matrix_; }
  const CMatrix& matrix() const noexcept { return matrix_.matrix(); }
  Eigen::Index dim() const noexcept { return matrix_.dim(); }
  const std::string& id() const noexcept { return id_; }
  OperatorKind kind() const noexcept { return kind_; }
  bool is_contraction() const noexcept { return contraction_; }
  double lambda_min() const noexcept { return lambda_min_; }
  double lambda_max() const noexcept { return lambda_max_; }

  /// ||P^2 - P||_inf; only meaningful for projection kinds, 0 otherwise.
  double idempotency_defect() const noexcept { return idempotency_defect_; }
  PositiveOperator& with_idempotency_defect(double d) {
    idempotency_defect_ = d;
    return *this;
  }

 private:
  HermitianMatrix matrix_;
  std::string id_;
  OperatorKind kind_;
  bool contraction_ = false;
  double lambda_min_ = 0.0;
  double lambda_max_ = 0.0;
  double idempotency_defect_ = 0.0;
};

}  // namespace kframes
