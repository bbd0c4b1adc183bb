#include "kframes/inner_function.hpp"

#include "kframes/errors.hpp"

#include <cmath>

namespace kframes {

namespace {

constexpr double kUnimodularTol = 1e-12;

// Taylor series of (|a|/a)(a - z)/(1 - conj(a) z):
//   c_0 = |a|,  c_k = (|a|/a) conj(a)^{k-1} (|a|^2 - 1)  for k >= 1.
CVector factor_series(cplx a, Eigen::Index count) {
  CVector c = CVector::Zero(count);
  if (count == 0) return c;
  const double r = std::abs(a);
  const cplx gauge = r / a;
  c(0) = r;
  cplx power{1.0, 0.0};
  for (Eigen::Index k = 1; k < count; ++k) {
    c(k) = gauge * power * (r * r - 1.0);
    power *= std::conj(a);
  }
  return c;
}

CVector truncated_product(const CVector& x, const CVector& y) {
  const Eigen::Index n = x.size();
  CVector out = CVector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (x(i) == cplx{}) continue;
    for (Eigen::Index j = 0; i + j < n; ++j) out(i + j) += x(i) * y(j);
  }
  return out;
}

}  // namespace

InnerFunction::InnerFunction(std::vector<DiskPoint> zeros, int monomial_power, cplx unimodular)
    : m_(monomial_power), u_(unimodular) {
  if (monomial_power < 0) throw Error(ErrorCode::InvalidArgument, "monomial power must be nonnegative");
  if (std::abs(std::abs(unimodular) - 1.0) > kUnimodularTol) {
    throw Error(ErrorCode::InvalidArgument, "front constant is not unimodular");
  }
  zeros_.reserve(zeros.size());
  for (const auto& a : zeros) {
    if (a.value() == cplx{}) {
      ++m_;
    } else {
      zeros_.push_back(a);
    }
  }
}

cplx InnerFunction::operator()(cplx z) const {
  cplx value = u_ * std::pow(z, m_);
  for (const auto& zero : zeros_) {
    const cplx a = zero.value();
    value *= (std::abs(a) / a) * (a - z) / (1.0 - std::conj(a) * z);
  }
  return value;
}

CVector InnerFunction::taylor_coefficients(Eigen::Index count) const {
  CVector series = CVector::Zero(count);
  if (count == 0) return series;
  series(0) = u_;
  for (const auto& zero : zeros_) series = truncated_product(series, factor_series(zero.value(), count));
  if (m_ == 0) return series;
  CVector shifted = CVector::Zero(count);
  if (m_ < count) shifted.tail(count - m_) = series.head(count - m_);
  return shifted;
}

InnerFunction InnerFunction::operator*(const InnerFunction& other) const {
  auto zeros = zeros_;
  zeros.insert(zeros.end(), other.zeros_.begin(), other.zeros_.end());
  const cplx u = u_ * other.u_;
  return InnerFunction(std::move(zeros), m_ + other.m_, u / std::abs(u));
}

cplx evaluate_inner(const InnerFunction& phi, const DiskPoint& z) { return phi(z.value()); }

}  // namespace kframes
