#include "kframes/verifier.hpp"

#include "kframes/errors.hpp"
#include "kframes/frame_analysis.hpp"
#include "kframes/kernels.hpp"
#include "kframes/operator_factory.hpp"
#include "kframes/serialize.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <set>

namespace kframes {

namespace {

Rng make_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return Rng(seq);
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

TruncationContext context_of(const SuiteConfig& cfg) { return TruncationContext{cfg.order, cfg.buffer}; }

PointFamily family_for(const SuiteConfig& cfg, int trial) {
  return cfg.point_families[static_cast<std::size_t>(trial) % cfg.point_families.size()];
}

/// Accumulates defect-versus-tolerance comparisons for one check.
class Tally {
 public:
  Tally(std::string id, std::map<std::string, double> tolerances) {
    result_.check_id = std::move(id);
    result_.tolerances = std::move(tolerances);
    result_.worst_violation = -std::numeric_limits<double>::infinity();
  }

  void begin_trial() { trial_failed_ = false; }

  void record(double defect, const std::string& tolerance_name) {
    const double tol = result_.tolerances.at(tolerance_name);
    const double excess = std::isnan(defect) ? std::numeric_limits<double>::infinity() : defect - tol;
    result_.worst_violation = std::max(result_.worst_violation, excess);
    if (!(excess <= 0.0)) trial_failed_ = true;
  }

  void fail() {
    result_.worst_violation = std::numeric_limits<double>::infinity();
    trial_failed_ = true;
  }

  void end_trial(const json& instance) {
    ++result_.trials;
    if (!trial_failed_) return;
    ++result_.failures;
    if (!result_.witness) result_.witness = instance;
  }

  CheckResult finish() { return std::move(result_); }

 private:
  CheckResult result_;
  bool trial_failed_ = false;
};

CVector values_at(const InnerFunction& phi, const PointSequence& seq) {
  CVector d(static_cast<Eigen::Index>(seq.size()));
  for (std::size_t i = 0; i < seq.size(); ++i) d(static_cast<Eigen::Index>(i)) = evaluate_inner(phi, seq[i]);
  return d;
}

PointSequence annulus_points(Rng& rng, int count, double r_min, double r_max) {
  std::vector<DiskPoint> pts;
  while (static_cast<int>(pts.size()) < count) {
    const DiskPoint p = uniform_disk_point(rng, r_max);
    if (p.modulus() >= r_min) pts.push_back(p);
  }
  return PointSequence(std::move(pts));
}

template <typename Body>
void run_trial(Tally& tally, json& instance, Body&& body) {
  tally.begin_trial();
  try {
    body();
  } catch (const Error& e) {
    instance["error"] = e.what();
    tally.fail();
  }
  tally.end_trial(instance);
}

}  // namespace

void SuiteConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::ConfigInvalid, "trials must be >= 1");
  if (order < 16) throw Error(ErrorCode::ConfigInvalid, "truncation order must be >= 16");
  if (buffer < 0) throw Error(ErrorCode::ConfigInvalid, "buffer must be >= 0");
  if (point_families.empty()) throw Error(ErrorCode::ConfigInvalid, "at least one point family is required");
  const auto& t = tolerances;
  for (double v : {t.toeplitz_covariance, t.loewner_chain, t.norm_sandwich, t.st_roundtrip, t.st_norm,
                   t.diag_sandwich, t.weighted_hardy}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorCode::ConfigInvalid, "tolerances must be finite and >= 0");
  }
}

bool SuiteReport::passed() const noexcept {
  for (const auto& r : results) {
    if (!r.passed()) return false;
  }
  return true;
}

CheckResult check_toeplitz_covariance(const SuiteConfig& cfg) {
  cfg.validate();
  Rng rng = make_rng(cfg.seed, 1);
  const auto ctx = context_of(cfg);
  Tally tally("toeplitz_covariance", {{"entrywise", cfg.tolerances.toeplitz_covariance}});
  for (int t = 0; t < cfg.trials; ++t) {
    const PointFamily family = family_for(cfg, t);
    const int count = uniform_int(rng, 2, 8);
    const PointSequence seq = sample_points(rng, family, count, 0.9);
    const InnerFunction phi = random_blaschke(rng, uniform_int(rng, 1, 5), 0.8);
    json instance{{"trial", t}, {"family", to_string(family)}, {"points", points_to_json(seq)},
                  {"inner", inner_to_json(phi)}};
    run_trial(tally, instance, [&] {
      const auto p = projection_phi_H2(phi, ctx);
      const Grammian lhs = image_gram(p.matrix(), seq, ctx, p.id());
      const CVector d = values_at(phi, seq);
      const HermitianMatrix rhs = diagonal_congruence(szego_gram(seq).matrix, d);
      const double defect = max_abs(lhs.matrix.matrix() - rhs.matrix());
      instance["defect"] = defect;
      tally.record(defect, "entrywise");
    });
  }
  return tally.finish();
}

CheckResult check_loewner_chain(const SuiteConfig& cfg) {
  cfg.validate();
  Rng rng = make_rng(cfg.seed, 2);
  const auto ctx = context_of(cfg);
  Tally tally("loewner_chain",
              {{"chain", cfg.tolerances.loewner_chain}, {"norm_sandwich", cfg.tolerances.norm_sandwich}});
  for (int t = 0; t < cfg.trials; ++t) {
    const int variant = t % 3;
    const int count = uniform_int(rng, 2, 8);
    json instance{{"trial", t}};
    InnerFunction phi;
    std::optional<PointSequence> seq;
    std::function<PositiveOperator()> build;

    if (variant == 0) {
      // Projection onto span{z^j : j not excluded}, witnessed by z^{j_n + 1}.
      std::set<int> excluded;
      const int n_excluded = uniform_int(rng, 1, 3);
      while (static_cast<int>(excluded.size()) < n_excluded) excluded.insert(uniform_int(rng, 0, 4));
      phi = InnerFunction::monomial(*excluded.rbegin() + 1);
      seq = annulus_points(rng, count, 0.5, 0.9);
      instance["example"] = "monomial_span";
      instance["excluded"] = excluded;
      build = [excluded, &ctx] { return projection_monomial_span(excluded, ctx.order); };
    } else if (variant == 1) {
      phi = random_blaschke(rng, uniform_int(rng, 1, 3), 0.8);
      seq = sample_points(rng, family_for(cfg, t), count, 0.9);
      instance["example"] = "c_plus_phi";
      build = [phi, &ctx] { return projection_c_plus_phi(phi, ctx); };
    } else {
      // Kernel spanned by inner functions phi_k; witness z * prod phi_k.
      std::vector<InnerFunction> spanners;
      const int n_spanners = uniform_int(rng, 1, 2);
      phi = InnerFunction::monomial(1);
      json js = json::array();
      for (int k = 0; k < n_spanners; ++k) {
        spanners.push_back(random_blaschke(rng, 1, 0.8));
        phi = phi * spanners.back();
        js.push_back(inner_to_json(spanners.back()));
      }
      seq = sample_points(rng, family_for(cfg, t), count, 0.9);
      instance["example"] = "inner_kernel";
      instance["kernel_spanners"] = js;
      build = [spanners, &ctx] { return projection_orthogonal_to(spanners, ctx); };
    }
    instance["inner"] = inner_to_json(phi);
    instance["points"] = points_to_json(*seq);

    run_trial(tally, instance, [&] {
      const PositiveOperator p = build();
      const PositiveOperator pphi = projection_phi_H2(phi, ctx);
      const double containment = containment_defect(p, phi, ctx);
      instance["containment_defect"] = containment;
      tally.record(containment, "chain");

      const Grammian g_phi = image_gram(pphi.matrix(), *seq, ctx, pphi.id());
      const Grammian g_p = image_gram(p.matrix(), *seq, ctx, p.id());
      const Grammian g = szego_gram(*seq);
      const double lower_gap = loewner_gap(g_phi.matrix, g_p.matrix);
      const double upper_gap = loewner_gap(g_p.matrix, g.matrix);
      instance["lower_gap"] = lower_gap;
      instance["upper_gap"] = upper_gap;
      tally.record(-lower_gap, "chain");
      tally.record(-upper_gap, "chain");

      const CMatrix k = kernel_matrix(*seq, ctx, false);
      const CMatrix pk = p.matrix() * k;
      for (Eigen::Index i = 0; i < k.cols(); ++i) {
        const double norm_k = k.col(i).norm();
        const double norm_pk = pk.col(i).norm();
        const double phi_abs = std::abs(evaluate_inner(phi, (*seq)[static_cast<std::size_t>(i)]));
        tally.record(phi_abs * norm_k - norm_pk, "norm_sandwich");
        tally.record(norm_pk - norm_k, "norm_sandwich");
      }
    });
  }
  return tally.finish();
}

CheckResult check_st_roundtrip(const SuiteConfig& cfg) {
  cfg.validate();
  Rng rng = make_rng(cfg.seed, 3);
  const auto ctx = context_of(cfg);
  constexpr double kDelta = 0.2;
  Tally tally("st_roundtrip", {{"roundtrip", cfg.tolerances.st_roundtrip}, {"norm", cfg.tolerances.st_norm}});
  for (int t = 0; t < cfg.trials; ++t) {
    const int count = uniform_int(rng, 1, 12);
    const PointSequence seq = carleson_sequence(rng, count, 0.0, 0.9, 0.3);
    const HermitianMatrix q = random_psd(rng, static_cast<int>(seq.size()), kDelta);
    json instance{{"trial", t}, {"points", points_to_json(seq)}, {"Q", matrix_to_json(q.matrix())},
                  {"delta", kDelta}};
    run_trial(tally, instance, [&] {
      const PositiveOperator p = st_construct(q, seq, ctx, kDelta);
      const StRoundtrip rt = st_roundtrip(p, q, seq, ctx);
      instance["roundtrip_error"] = rt.roundtrip_error;
      instance["min_norm_sq"] = rt.min_norm_sq;
      tally.record(rt.roundtrip_error, "roundtrip");
      tally.record(kDelta - rt.min_norm_sq, "norm");
    });
  }
  return tally.finish();
}

CheckResult check_diag_sandwich(const SuiteConfig& cfg) {
  cfg.validate();
  Rng rng = make_rng(cfg.seed, 4);
  const int n = cfg.order;
  const auto ctx = context_of(cfg);
  constexpr int kTestVectors = 100;
  Tally tally("diag_sandwich", {{"relative", cfg.tolerances.diag_sandwich}});
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < cfg.trials; ++t) {
    RVector w(n);
    for (int i = 0; i < n; ++i) w(i) = uniform(rng, 0.05, 1.0);
    const double s = uniform(rng, 0.0, 1.0);
    CMatrix b = CMatrix::Identity(n, n);
    for (int i = 0; i + 1 < n; ++i) {
      const double re1 = gauss(rng);
      const double im1 = gauss(rng);
      const double re2 = gauss(rng);
      const double im2 = gauss(rng);
      b(i, i + 1) += 0.1 * cplx(re1, im1);
      b(i + 1, i) += 0.1 * cplx(re2, im2);
    }
    const CMatrix d = w.cast<cplx>().asDiagonal();
    const HermitianMatrix p(s * d + (1.0 - s) * b * d * b.adjoint());
    const PointSequence seq = sample_points(rng, family_for(cfg, t), uniform_int(rng, 2, 8), 0.9);
    std::vector<CVector> xs;
    for (int k = 0; k < kTestVectors; ++k) {
      CVector x(n);
      for (int i = 0; i < n; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        x(i) = cplx(re, im);
      }
      xs.push_back(std::move(x));
    }
    json instance{{"trial", t}, {"s", s}, {"points", points_to_json(seq)}};
    run_trial(tally, instance, [&] {
      const RVector inv_sqrt = w.cwiseSqrt().cwiseInverse();
      const HermitianMatrix scaled(inv_sqrt.asDiagonal() * p.matrix() * inv_sqrt.asDiagonal());
      const auto ex = eig_extremes(scaled);
      const double alpha = ex.lambda_min;
      const double beta = ex.lambda_max;
      instance["alpha"] = alpha;
      instance["beta"] = beta;
      if (!(alpha > 0.0)) tally.fail();

      for (const auto& x : xs) {
        const double dx = (x.adjoint() * d * x)(0).real();
        const double px = (x.adjoint() * p.matrix() * x)(0).real();
        const double scale = beta * dx;
        tally.record((alpha * dx - px) / scale, "relative");
        tally.record((px - beta * dx) / scale, "relative");
      }

      const CMatrix v = kernel_matrix(seq, ctx, true);
      const HermitianMatrix gp(v.adjoint() * p.matrix() * v);
      const HermitianMatrix gd(v.adjoint() * d * v);
      const double scale = beta * lambda_max(gd);
      tally.record(-loewner_gap(HermitianMatrix(alpha * gd.matrix()), gp) / scale, "relative");
      tally.record(-loewner_gap(gp, HermitianMatrix(beta * gd.matrix())) / scale, "relative");
      const auto ep = eig_extremes(gp);
      const auto ed = eig_extremes(gd);
      tally.record((alpha * ed.lambda_min - ep.lambda_min) / scale, "relative");
      tally.record((ep.lambda_max - beta * ed.lambda_max) / scale, "relative");
    });
  }
  return tally.finish();
}

CheckResult check_weighted_hardy(const SuiteConfig& cfg) {
  cfg.validate();
  Rng rng = make_rng(cfg.seed, 5);
  const auto ctx = context_of(cfg);
  Tally tally("weighted_hardy", {{"entrywise", cfg.tolerances.weighted_hardy}});
  for (int t = 0; t < cfg.trials; ++t) {
    const double s = uniform(rng, 0.0, 0.9);
    const PointSequence seq = sample_points(rng, family_for(cfg, t), uniform_int(rng, 2, 8), 0.9);
    json instance{{"trial", t}, {"s", s}, {"points", points_to_json(seq)}};
    run_trial(tally, instance, [&] {
      std::vector<double> weights(static_cast<std::size_t>(ctx.order));
      for (std::size_t k = 0; k < weights.size(); ++k) weights[k] = std::pow(s, static_cast<double>(k));
      const PositiveOperator p = diagonal_operator(weights);
      const Grammian g = range_space_gram(p, seq, ctx);

      const auto m = static_cast<Eigen::Index>(seq.size());
      CMatrix closed(m, m);
      CMatrix series(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        const cplx zi = seq[static_cast<std::size_t>(i)].value();
        for (Eigen::Index j = 0; j < m; ++j) {
          const cplx zj = seq[static_cast<std::size_t>(j)].value();
          closed(i, j) = std::sqrt((1.0 - s * std::norm(zi)) * (1.0 - s * std::norm(zj))) /
                         (1.0 - s * zi * std::conj(zj));
          series(i, j) = weighted_hardy_kernel(weights, seq[static_cast<std::size_t>(i)],
                                               seq[static_cast<std::size_t>(j)]);
        }
      }
      const RVector norms = series.diagonal().real().cwiseSqrt().cwiseInverse();
      series = norms.asDiagonal() * series * norms.asDiagonal();
      const double defect = std::max(max_abs(g.matrix.matrix() - closed), max_abs(g.matrix.matrix() - series));
      instance["defect"] = defect;
      tally.record(defect, "entrywise");
    });
  }
  return tally.finish();
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  SuiteReport report;
  report.config = cfg;
  report.results.push_back(check_toeplitz_covariance(cfg));
  report.results.push_back(check_loewner_chain(cfg));
  report.results.push_back(check_st_roundtrip(cfg));
  report.results.push_back(check_diag_sandwich(cfg));
  report.results.push_back(check_weighted_hardy(cfg));
  return report;
}

}  // namespace kframes
