#include "kframes/disk_geometry.hpp"

#include "kframes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace kframes {

namespace {

// exp(-700) is close to the smallest normal double; below it the product is
// reported as 0 with the underflow flag.
constexpr double kLogUnderflow = -700.0;

std::string describe(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

}  // namespace

DiskPoint::DiskPoint(cplx value) : value_(value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) || std::abs(value) >= 1.0) {
    throw Error(ErrorCode::InvalidPoint, "point " + describe(value) + " is not in the open unit disk");
  }
}

double DiskPoint::one_minus_modulus_sq() const noexcept {
  const double r = modulus();
  return (1.0 - r) * (1.0 + r);
}

PointSequence::PointSequence(std::vector<DiskPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw Error(ErrorCode::InvalidArgument, "point sequence must be nonempty");
  labels_.resize(points_.size());
  std::iota(labels_.begin(), labels_.end(), 0);
}

PointSequence::PointSequence(std::vector<DiskPoint> points, std::vector<int> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  if (points_.empty()) throw Error(ErrorCode::InvalidArgument, "point sequence must be nonempty");
  if (labels_.size() != points_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "label count differs from point count");
  }
}

PointSequence PointSequence::from_complex(std::span<const cplx> values) {
  std::vector<DiskPoint> pts;
  pts.reserve(values.size());
  for (cplx v : values) pts.emplace_back(v);
  return PointSequence(std::move(pts));
}

PointSequence PointSequence::subset(std::span<const std::size_t> positions) const {
  std::vector<DiskPoint> pts;
  std::vector<int> labs;
  for (std::size_t p : positions) {
    if (p >= points_.size()) throw Error(ErrorCode::IndexOutOfRange, "subset position out of range");
    pts.push_back(points_[p]);
    labs.push_back(labels_[p]);
  }
  return PointSequence(std::move(pts), std::move(labs));
}

PointSequence PointSequence::prefix(std::size_t count) const {
  count = std::min(count, points_.size());
  return PointSequence({points_.begin(), points_.begin() + static_cast<std::ptrdiff_t>(count)},
                       {labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(count)});
}

PointSequence PointSequence::appended(DiskPoint p) const {
  auto pts = points_;
  auto labs = labels_;
  pts.push_back(p);
  labs.push_back(labs.empty() ? 0 : *std::max_element(labs.begin(), labs.end()) + 1);
  return PointSequence(std::move(pts), std::move(labs));
}

double PointSequence::max_modulus() const noexcept {
  double r = 0.0;
  for (const auto& p : points_) r = std::max(r, p.modulus());
  return r;
}

double pseudo_hyperbolic(const DiskPoint& z, const DiskPoint& w) noexcept {
  const cplx a = z.value();
  const cplx b = w.value();
  if (a == b) return 0.0;
  return std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
}

DiskPoint mobius(const DiskPoint& a, const DiskPoint& u) {
  const cplx av = a.value();
  const cplx uv = u.value();
  return DiskPoint((av - uv) / (1.0 - std::conj(av) * uv));
}

void require_distinct(const PointSequence& seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) {
        throw Error(ErrorCode::DuplicatePoint, "points " + std::to_string(seq.labels()[i]) + " and " +
                                                   std::to_string(seq.labels()[j]) + " coincide");
      }
    }
  }
}

CarlesonReport carleson_constants(const PointSequence& seq, double delta) {
  require_distinct(seq);
  const std::size_t n = seq.size();
  std::vector<double> log_products(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double l = std::log(pseudo_hyperbolic(seq[i], seq[j]));
      log_products[i] += l;
      log_products[j] += l;
    }
  }
  CarlesonReport report;
  report.per_index_products.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (log_products[j] < kLogUnderflow) {
      report.per_index_products[j] = 0.0;
      report.underflow = true;
    } else {
      report.per_index_products[j] = std::min(1.0, std::exp(log_products[j]));
    }
  }
  report.infimum = *std::min_element(report.per_index_products.begin(), report.per_index_products.end());
  report.satisfied_at = delta;
  report.satisfied = report.infimum >= delta;
  return report;
}

double blaschke_condition_sum(const PointSequence& seq) noexcept {
  double s = 0.0;
  for (const auto& p : seq.points()) s += 1.0 - p.modulus();
  return s;
}

double separation_constant(const PointSequence& seq) {
  if (seq.size() < 2) throw Error(ErrorCode::SingletonSequence, "separation needs at least two points");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) best = std::min(best, pseudo_hyperbolic(seq[i], seq[j]));
  }
  return best;
}

}  // namespace kframes
