#include "kframes/positive_operator.hpp"

#include "kframes/errors.hpp"

#include <array>
#include <utility>

namespace kframes {

namespace {

constexpr double kContractionSlack = 1e-10;

constexpr std::array<std::pair<OperatorKind, std::string_view>, 8> kKindNames{{
    {OperatorKind::identity, "identity"},
    {OperatorKind::diagonal, "diagonal"},
    {OperatorKind::projection_phiH2, "projection_phiH2"},
    {OperatorKind::projection_model, "projection_model"},
    {OperatorKind::projection_monomial, "projection_monomial"},
    {OperatorKind::projection_c_plus_phi, "c_plus_phi"},
    {OperatorKind::st_constructed, "st"},
    {OperatorKind::custom, "custom"},
}};

}  // namespace

std::string_view to_string(OperatorKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "custom";
}

OperatorKind operator_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown operator type '" + std::string(name) + "'");
}

PositiveOperator::PositiveOperator(HermitianMatrix matrix, std::string id, OperatorKind kind)
    : matrix_(std::move(matrix)), id_(std::move(id)), kind_(kind) {
  const auto ex = eig_extremes(matrix_);
  lambda_min_ = ex.lambda_min;
  lambda_max_ = ex.lambda_max;
  if (lambda_min_ < -kPsdClipTol * std::max(lambda_max_, 0.0)) {
    throw Error(ErrorCode::NotPSD, "operator '" + id_ + "' has lambda_min " + std::to_string(lambda_min_));
  }
  contraction_ = lambda_max_ <= 1.0 + kContractionSlack;
}

}  // namespace kframes
