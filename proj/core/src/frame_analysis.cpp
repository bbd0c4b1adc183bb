#include "kframes/frame_analysis.hpp"

#include "kframes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace kframes {

BoundsReport analyze(const Grammian& g, double riesz_tol, double rank_tol) {
  const auto ex = eig_extremes(g.matrix, rank_tol);
  if (ex.lambda_min < -kPsdClipTol * std::max(ex.lambda_max, 0.0)) {
    throw Error(ErrorCode::NotPSD, "Grammian has lambda_min " + std::to_string(ex.lambda_min));
  }
  BoundsReport r;
  r.riesz_tol = riesz_tol;
  r.rank_tol = rank_tol;
  r.bessel_B = ex.lambda_max;
  r.riesz_c = ex.lambda_min;
  r.frame_A = ex.smallest_above;
  const RVector diag = g.matrix.matrix().diagonal().real();
  r.lower_norm_delta = std::sqrt(std::max(diag.minCoeff(), 0.0));
  r.is_bessel = std::isfinite(r.bessel_B);
  r.is_bounded_below = r.lower_norm_delta > 0.0;
  r.is_riesz = r.riesz_c >= riesz_tol;
  r.is_frame = r.frame_A >= riesz_tol;
  return r;
}

Grammian congruence_diag(const Grammian& g, std::span<const cplx> d) {
  if (static_cast<Eigen::Index>(d.size()) != g.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "diagonal length differs from Grammian dimension");
  }
  CVector dv(g.dim());
  bool unimodular = true;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == cplx{}) throw Error(ErrorCode::SingularDiagonal, "diagonal entry " + std::to_string(i) + " is zero");
    dv(static_cast<Eigen::Index>(i)) = d[i];
    unimodular = unimodular && std::abs(std::abs(d[i]) - 1.0) <= 1e-12;
  }
  Grammian out = g;
  out.matrix = diagonal_congruence(g.matrix, dv);
  out.normalized = g.normalized && unimodular;
  out.provenance.notes.emplace_back("diagonal congruence D G D*");
  return out;
}

Grammian compress(const Grammian& g, std::span<const int> labels) {
  if (labels.empty()) throw Error(ErrorCode::EmptySubset, "compression to an empty label set");
  const auto& all = g.provenance.labels;
  std::unordered_map<int, Eigen::Index> position;
  for (std::size_t i = 0; i < all.size(); ++i) position.emplace(all[i], static_cast<Eigen::Index>(i));
  const bool implicit = all.empty();

  std::vector<Eigen::Index> pos;
  pos.reserve(labels.size());
  for (int l : labels) {
    if (implicit) {
      if (l < 0 || l >= g.dim()) throw Error(ErrorCode::UnknownLabel, "label " + std::to_string(l) + " not present");
      pos.push_back(l);
      continue;
    }
    auto it = position.find(l);
    if (it == position.end()) throw Error(ErrorCode::UnknownLabel, "label " + std::to_string(l) + " not present");
    pos.push_back(it->second);
  }

  Grammian out;
  out.matrix = principal_submatrix(g.matrix, pos);
  out.normalized = g.normalized;
  out.truncation_error = g.truncation_error;
  out.provenance.space = g.provenance.space;
  out.provenance.operator_id = g.provenance.operator_id;
  out.provenance.notes = g.provenance.notes;
  out.provenance.labels.assign(labels.begin(), labels.end());
  if (static_cast<Eigen::Index>(g.provenance.points.size()) == g.dim()) {
    for (auto p : pos) out.provenance.points.push_back(g.provenance.points[static_cast<std::size_t>(p)]);
  }
  return out;
}

}  // namespace kframes
