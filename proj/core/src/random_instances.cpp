#include "kframes/random_instances.hpp"

#include "kframes/errors.hpp"

#include <cmath>
#include <numbers>

namespace kframes {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double random_angle(Rng& rng) { return uniform(rng, 0.0, 2.0 * std::numbers::pi); }

cplx gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

constexpr int kMaxRejections = 20000;

}  // namespace

std::string_view to_string(PointFamily f) noexcept {
  switch (f) {
    case PointFamily::uniform_disk: return "uniform_disk";
    case PointFamily::radial_geometric: return "radial_geometric";
    case PointFamily::carleson_separated: return "carleson_separated";
    case PointFamily::clustered: return "clustered";
  }
  return "uniform_disk";
}

PointFamily point_family_from_string(std::string_view name) {
  for (auto f : {PointFamily::uniform_disk, PointFamily::radial_geometric, PointFamily::carleson_separated,
                 PointFamily::clustered}) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown point family '" + std::string(name) + "'");
}

DiskPoint uniform_disk_point(Rng& rng, double r_max) {
  for (;;) {
    const double x = uniform(rng, -r_max, r_max);
    const double y = uniform(rng, -r_max, r_max);
    if (x * x + y * y <= r_max * r_max) return DiskPoint(x, y);
  }
}

PointSequence radial_geometric(Rng& rng, int count, double gamma) {
  std::vector<DiskPoint> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k) {
    const double r = 1.0 - std::pow(gamma, k);
    pts.emplace_back(std::polar(r, random_angle(rng)));
  }
  return PointSequence(std::move(pts));
}

PointSequence carleson_sequence(Rng& rng, int count, double r_min, double r_max, double delta) {
  std::vector<DiskPoint> pts;
  std::vector<double> log_products;
  const double log_delta = std::log(delta);
  std::vector<double> logs;
  for (int attempt = 0; attempt < kMaxRejections && static_cast<int>(pts.size()) < count; ++attempt) {
    const double r = std::sqrt(uniform(rng, r_min * r_min, r_max * r_max));
    const DiskPoint cand(std::polar(r, random_angle(rng)));
    logs.resize(pts.size());
    double own = 0.0;
    bool ok = true;
    for (std::size_t k = 0; k < pts.size() && ok; ++k) {
      logs[k] = std::log(pseudo_hyperbolic(pts[k], cand));
      own += logs[k];
      ok = log_products[k] + logs[k] >= log_delta;
    }
    if (!ok || own < log_delta) continue;
    for (std::size_t k = 0; k < pts.size(); ++k) log_products[k] += logs[k];
    pts.push_back(cand);
    log_products.push_back(own);
  }
  return PointSequence(std::move(pts));
}

PointSequence sample_points(Rng& rng, PointFamily family, int count, double r_max, double separation) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "point count must be >= 1");
  std::vector<DiskPoint> pts;
  switch (family) {
    case PointFamily::uniform_disk:
      for (int i = 0; i < count; ++i) pts.push_back(uniform_disk_point(rng, r_max));
      break;
    case PointFamily::radial_geometric: {
      const double gamma = uniform(rng, 0.5, 0.8);
      int k = 1;
      while (static_cast<int>(pts.size()) < count) {
        const double r = 1.0 - std::pow(gamma, k);
        if (r > r_max) {
          k = 1;
          continue;
        }
        pts.emplace_back(std::polar(r, random_angle(rng)));
        ++k;
      }
      break;
    }
    case PointFamily::carleson_separated: {
      for (int attempt = 0; attempt < kMaxRejections && static_cast<int>(pts.size()) < count; ++attempt) {
        const DiskPoint cand = uniform_disk_point(rng, r_max);
        bool ok = true;
        for (const auto& p : pts) ok = ok && pseudo_hyperbolic(p, cand) >= separation;
        if (ok) pts.push_back(cand);
      }
      break;
    }
    case PointFamily::clustered: {
      const DiskPoint centre = uniform_disk_point(rng, r_max);
      while (static_cast<int>(pts.size()) < count) {
        // A pseudo-hyperbolic ball around the centre is the Mobius image of a
        // Euclidean ball around 0.
        const DiskPoint offset = uniform_disk_point(rng, 0.2);
        const DiskPoint p = mobius(centre, offset);
        if (p.modulus() <= r_max) pts.push_back(p);
      }
      break;
    }
  }
  return PointSequence(std::move(pts));
}

InnerFunction random_blaschke(Rng& rng, int zeros, double r_max) {
  std::vector<DiskPoint> a;
  for (int k = 0; k < zeros; ++k) a.push_back(uniform_disk_point(rng, r_max));
  return InnerFunction(std::move(a));
}

HermitianMatrix random_psd(Rng& rng, int n, double shift) {
  CMatrix b(n, n);
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = gaussian(rng);
  }
  CMatrix q = b * b.adjoint() / static_cast<double>(n);
  q.diagonal().array() += shift;
  return HermitianMatrix(q);
}

HermitianMatrix random_hermitian(Rng& rng, int n) {
  CMatrix b(n, n);
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = gaussian(rng);
  }
  return HermitianMatrix((b + b.adjoint()) / 2.0);
}

}  // namespace kframes
