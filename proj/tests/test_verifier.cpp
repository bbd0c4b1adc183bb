#include "kframes/errors.hpp"
#include "kframes/frame_analysis.hpp"
#include "kframes/kernels.hpp"
#include "kframes/operator_factory.hpp"
#include "kframes/serialize.hpp"
#include "kframes/verifier.hpp"

#include <doctest.h>

using namespace kframes;

namespace {

SuiteConfig small_config(int trials) {
  SuiteConfig cfg;
  cfg.trials = trials;
  return cfg;
}

PointSequence pts(std::vector<cplx> z) { return PointSequence::from_complex(z); }

}  // namespace

TEST_CASE("toeplitz covariance for phi = z, computed both ways") {
  const TruncationContext ctx{256, 64};
  const auto seq = pts({{0.3, 0}, {0.5, 0}});
  const auto p = projection_phi_H2(InnerFunction::monomial(1), ctx);
  const auto lhs = image_gram(p.matrix(), seq, ctx);
  const std::vector<cplx> d{0.3, 0.5};
  const auto rhs = congruence_diag(szego_gram(seq), d);
  CHECK(max_abs(lhs.matrix.matrix() - rhs.matrix.matrix()) <= 1e-12);
}

TEST_CASE("toeplitz covariance when phi vanishes at a point") {
  const TruncationContext ctx{256, 64};
  const DiskPoint a(0.4, 0.2);
  const auto phi = InnerFunction::blaschke_factor(a);
  const auto seq = PointSequence({a, DiskPoint(-0.5, 0.1)});
  const auto lhs = image_gram(projection_phi_H2(phi, ctx).matrix(), seq, ctx);
  CHECK(std::abs(lhs.matrix(0, 0)) <= 1e-12);
  CHECK(std::abs(lhs.matrix(0, 1)) <= 1e-12);
  CHECK(std::abs(lhs.matrix(1, 1)) > 0.1);
}

TEST_CASE("diagonal sandwich with P a multiple of D") {
  const TruncationContext ctx{64, 0};
  std::vector<double> w(64);
  for (int n = 0; n < 64; ++n) w[static_cast<std::size_t>(n)] = 1.0 / (1.0 + n);
  const auto d = diagonal_operator(w);
  const auto seq = pts({{0.2, 0.1}, {-0.4, 0.5}});
  for (double s : {1.0, 2.0}) {
    const auto p = custom_operator(HermitianMatrix(s * d.matrix()));
    const auto gp = image_gram(psd_sqrt(p.hermitian()).matrix(), seq, ctx);
    const auto gd = image_gram(psd_sqrt(d.hermitian()).matrix(), seq, ctx);
    CHECK(max_abs(gp.matrix.matrix() - s * gd.matrix.matrix()) <= 1e-13);
  }
}

TEST_CASE("every replayed identity passes at default tolerances") {
  const auto cfg = small_config(10);
  for (const auto& r : {check_toeplitz_covariance(cfg), check_loewner_chain(cfg), check_st_roundtrip(cfg),
                        check_diag_sandwich(cfg), check_weighted_hardy(cfg)}) {
    INFO(r.check_id);
    CHECK(r.trials == 10);
    CHECK(r.failures == 0);
    CHECK(r.passed());
    CHECK(r.worst_violation < 0.0);
    CHECK_FALSE(r.witness.has_value());
  }
}

TEST_CASE("run_suite is deterministic") {
  const auto cfg = small_config(2);
  const auto a = suite_report_to_json(run_suite(cfg)).dump(2);
  const auto b = suite_report_to_json(run_suite(cfg)).dump(2);
  CHECK(a == b);
  auto other = cfg;
  other.seed = 43;
  CHECK(suite_report_to_json(run_suite(other)).dump(2) != a);
}

TEST_CASE("run_suite reports every check") {
  const auto report = run_suite(small_config(1));
  REQUIRE(report.results.size() == 5);
  CHECK(report.results[0].check_id == "toeplitz_covariance");
  CHECK(report.results[4].check_id == "weighted_hardy");
  CHECK(report.passed());
}

TEST_CASE("invalid configurations") {
  auto cfg = small_config(0);
  CHECK_THROWS_AS(run_suite(cfg), Error);
  try {
    run_suite(cfg);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigInvalid);
  }
  cfg = small_config(1);
  cfg.point_families.clear();
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = small_config(1);
  cfg.tolerances.st_roundtrip = -1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("an impossible tolerance fails with a witness") {
  auto cfg = small_config(3);
  cfg.tolerances.weighted_hardy = 0.0;
  cfg.tolerances.toeplitz_covariance = 0.0;
  const auto report = run_suite(cfg);
  CHECK_FALSE(report.passed());
  for (const auto& r : report.results) {
    if (r.check_id == "weighted_hardy" || r.check_id == "toeplitz_covariance") {
      CHECK(r.failures > 0);
      CHECK(r.worst_violation > 0.0);
      REQUIRE(r.witness.has_value());
      CHECK(r.witness->contains("points"));
    }
  }
}
