#include "kframes/errors.hpp"
#include "kframes/frame_analysis.hpp"
#include "kframes/kernels.hpp"
#include "kframes/operator_factory.hpp"
#include "kframes/random_instances.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace kframes;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected kframes::Error");
  return ErrorCode::InvalidArgument;
}

PointSequence pts(std::vector<cplx> z) { return PointSequence::from_complex(z); }

std::vector<double> geometric_weights(double s, int n) {
  std::vector<double> p(static_cast<std::size_t>(n));
  double w = 1.0;
  for (auto& x : p) {
    x = w;
    w *= s;
  }
  return p;
}

}  // namespace

TEST_CASE("szego_gram examples against the truncated series") {
  const auto g = szego_gram(pts({{0, 0}, {0.6, 0}}));
  CHECK(g.normalized);
  CHECK(std::abs(g.matrix(0, 1) - 0.8) <= 1e-15);
  CHECK(std::abs(g.matrix(0, 1) - oracle::szego_series_entry(0.0, 0.6, 256)) <= 1e-10);

  const auto single = szego_gram(pts({{0.7, -0.1}}));
  CHECK(single.dim() == 1);
  CHECK(single.matrix(0, 0) == cplx(1.0, 0.0));

  const auto h = szego_gram(pts({{0.5, 0}, {0, 0.5}}));
  const cplx expected = 0.75 / cplx(1.0, 0.25);
  CHECK(std::abs(h.matrix(0, 1) - expected) <= 1e-15);
  CHECK(std::abs(std::abs(h.matrix(0, 1)) - 0.75 / std::sqrt(1.0625)) <= 1e-15);
  CHECK(std::abs(h.matrix(0, 1) - oracle::szego_series_entry({0.5, 0}, {0, 0.5}, 256)) <= 1e-10);
}

TEST_CASE("szego_gram matches the series oracle on random points") {
  Rng rng(99);
  std::vector<DiskPoint> p;
  for (int k = 0; k < 12; ++k) p.push_back(uniform_disk_point(rng, 0.9));
  const PointSequence seq(p);
  const auto g = szego_gram(seq);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      CHECK(std::abs(g.matrix(ii, jj) - oracle::szego_series_entry(p[i].value(), p[j].value(), 256)) <= 1e-10);
    }
  }
  CHECK(g.provenance.labels == seq.labels());
  CHECK(g.provenance.space == "H2");
}

TEST_CASE("kernel_vector examples and the reproducing property") {
  const TruncationContext ctx{8, 0};
  const auto k0 = kernel_vector(DiskPoint(0, 0), ctx, false);
  CHECK(k0.coeffs(0) == cplx(1.0));
  CHECK(k0.coeffs.tail(7).norm() == 0.0);

  const auto k = kernel_vector(DiskPoint(0.5, 0), TruncationContext{3, 0}, false);
  CHECK(k.coeffs(0) == cplx(1.0));
  CHECK(k.coeffs(1) == cplx(0.5));
  CHECK(k.coeffs(2) == cplx(0.25));

  CVector p = CVector::Zero(8);
  p(0) = 1.0;
  p(1) = 2.0;
  const auto kw = kernel_vector(DiskPoint(0.3, 0), ctx, false);
  // <p, k_w> is conjugate-linear in k_w.
  CHECK(std::abs(kw.coeffs.dot(p) - 1.6) <= 1e-15);

  const auto kn = kernel_vector(DiskPoint(0.4, 0.3), TruncationContext{256, 0}, true);
  CHECK(std::abs(kn.coeffs.norm() - 1.0) <= 1e-14);
  CHECK(kn.normalized);
}

TEST_CASE("truncation context validation and tail bound") {
  CHECK(code_of([] { TruncationContext{0, 0}.validate(); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { TruncationContext{4, -1}.validate(); }) == ErrorCode::InvalidArgument);
  const TruncationContext ctx{10, 0};
  CHECK(ctx.tail_bound(0.5) == doctest::Approx(std::pow(0.5, 10) / 0.75));
}

TEST_CASE("range_space_gram with the identity reproduces szego_gram") {
  const TruncationContext ctx{256, 0};
  Rng rng(4);
  std::vector<DiskPoint> p;
  for (int k = 0; k < 10; ++k) p.push_back(uniform_disk_point(rng, 0.9));
  const PointSequence seq(p);
  const auto g = range_space_gram(identity_operator(256), seq, ctx);
  CHECK(g.provenance.space == "H(P)");
  CHECK(max_abs(g.matrix.matrix() - szego_gram(seq).matrix.matrix()) <= std::max(g.truncation_error, 1e-13));

  // Scaling P does not change the normalized Grammian.
  const auto scaled = range_space_gram(custom_operator(HermitianMatrix(3.0 * CMatrix::Identity(256, 256))), seq, ctx);
  CHECK(max_abs(scaled.matrix.matrix() - g.matrix.matrix()) <= 1e-13);
}

TEST_CASE("range_space_gram for geometric weights matches the closed-form kernel") {
  const TruncationContext ctx{256, 0};
  const auto w = geometric_weights(0.5, 256);
  const auto g = range_space_gram(diagonal_operator(w), pts({{0, 0}, {0.6, 0}}), ctx);
  CHECK(std::abs(g.matrix(0, 1) - std::sqrt(0.82)) <= 1e-8);
  CHECK(std::abs(g.matrix(0, 1) - 0.9055385138) <= 1e-9);
}

TEST_CASE("range_space_gram errors") {
  const TruncationContext ctx{16, 0};
  CHECK(code_of([&] { range_space_gram(projection_monomial_span({0}, 16), pts({{0, 0}, {0.5, 0}}), ctx); }) ==
        ErrorCode::DegenerateKernel);
  CHECK(code_of([&] { range_space_gram(identity_operator(8), pts({{0, 0}}), ctx); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("weighted_hardy_kernel examples") {
  const DiskPoint z(0.3, 0.2);
  const DiskPoint w(-0.5, 0.4);
  const std::vector<double> ones(64, 1.0);
  cplx truncated = 0.0;
  for (int n = 0; n < 64; ++n) truncated += std::pow(z.value() * std::conj(w.value()), n);
  CHECK(std::abs(weighted_hardy_kernel(ones, z, w) - truncated) <= 1e-14);

  const auto p = geometric_weights(0.5, 256);
  const DiskPoint x(0.6, 0);
  CHECK(std::abs(weighted_hardy_kernel(p, x, x) - (1.0 - std::pow(0.18, 256)) / 0.82) <= 1e-14);

  const std::vector<double> q{0.7, 0.2, 0.1};
  CHECK(weighted_hardy_kernel(q, DiskPoint(0, 0), w) == cplx(0.7));

  const std::vector<double> bad{1.0, 1.5};
  CHECK(code_of([&] { weighted_hardy_kernel(bad, z, w); }) == ErrorCode::WeightOutOfRange);
}

TEST_CASE("distinct points give a Riesz Grammian, duplicates only a frame") {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    std::vector<DiskPoint> p;
    for (int k = 0; k < 6; ++k) p.push_back(uniform_disk_point(rng, 0.9));
    CHECK(lambda_min(szego_gram(PointSequence(p)).matrix) > 0.0);
    p.push_back(p[static_cast<std::size_t>(t % 6)]);
    const auto report = analyze(szego_gram(PointSequence(p)));
    CHECK(report.riesz_c <= 1e-12);
    CHECK(report.frame_A > 0.0);
    CHECK_FALSE(report.is_riesz);
    CHECK(report.is_frame);
  }
}

TEST_CASE("image_gram of the identity matches the truncated szego Grammian") {
  const TruncationContext ctx{64, 0};
  const auto seq = pts({{0.1, 0.2}, {-0.3, 0.5}});
  const auto g = image_gram(CMatrix::Identity(64, 64), seq, ctx, "id");
  CHECK(max_abs(g.matrix.matrix() - szego_gram(seq).matrix.matrix()) <= 1e-14);
  CHECK(g.provenance.operator_id == std::optional<std::string>("id"));
}
