// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "cli.hpp"
#include "kframes/disk_geometry.hpp"
#include "kframes/frame_analysis.hpp"
#include "kframes/inner_function.hpp"
#include "kframes/kernels.hpp"
#include "kframes/operator_factory.hpp"
#include "kframes/partitioner.hpp"
#include "kframes/random_instances.hpp"
#include "kframes/verifier.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace kframes;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// Product formula written out here rather than taken from InnerFunction.
cplx blaschke_value(const std::vector<cplx>& zeros, cplx z) {
  cplx v = 1.0;
  for (cplx a : zeros) v *= (std::abs(a) / a) * (a - z) / (1.0 - std::conj(a) * z);
  return v;
}

cplx szego_closed(cplx zi, cplx zj) {
  return std::sqrt((1.0 - std::norm(zi)) * (1.0 - std::norm(zj))) / (1.0 - zi * std::conj(zj));
}

std::vector<cplx> values(const PointSequence& seq) {
  std::vector<cplx> out;
  for (const auto& p : seq.points()) out.push_back(p.value());
  return out;
}

PointSequence uniform_points(Rng& rng, int n, double r) {
  std::vector<DiskPoint> p;
  for (int k = 0; k < n; ++k) p.push_back(uniform_disk_point(rng, r));
  return PointSequence(p);
}

Outcome criterion1() {
  Rng rng(1001);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto seq = uniform_points(rng, 2, 0.9);
    const auto g = szego_gram(seq);
    for (Eigen::Index i = 0; i < 2; ++i) {
      for (Eigen::Index j = 0; j < 2; ++j) {
        const cplx o = oracle::szego_series_entry(seq[static_cast<std::size_t>(i)].value(),
                                                  seq[static_cast<std::size_t>(j)].value(), 256);
        worst = std::max(worst, std::abs(g.matrix(i, j) - o));
      }
    }
  }
  return {worst <= 1e-8, fmt("max abs error %.3e (tol 1e-8)", worst)};
}

Outcome criterion2() {
  Rng rng(1002);
  const TruncationContext ctx{256, 64};
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int nz = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<DiskPoint> zeros;
    std::vector<cplx> raw;
    for (int k = 0; k < nz; ++k) {
      DiskPoint a;
      do {
        a = uniform_disk_point(rng, 0.8);
      } while (a.modulus() == 0.0);
      zeros.push_back(a);
      raw.push_back(a.value());
    }
    const InnerFunction phi(zeros);
    const int m = std::uniform_int_distribution<int>(2, 8)(rng);
    const auto seq = uniform_points(rng, m, 0.9);
    const auto z = values(seq);
    const auto lhs = image_gram(projection_phi_H2(phi, ctx).matrix(), seq, ctx);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const cplx rhs = blaschke_value(raw, z[i]) * szego_closed(z[i], z[j]) * std::conj(blaschke_value(raw, z[j]));
        worst = std::max(worst, std::abs(lhs.matrix(i, j) - rhs));
      }
    }
  }
  return {worst <= 1e-6, fmt("max entrywise defect %.3e (tol 1e-6)", worst)};
}

Outcome criterion3() {
  SuiteConfig cfg;
  cfg.seed = 1003;
  cfg.trials = 50;
  const auto r = check_loewner_chain(cfg);
  const bool tolerances_match =
      r.tolerances.at("chain") == 1e-8 && r.tolerances.at("norm_sandwich") == 1e-6;
  return {r.passed() && r.trials == 50 && tolerances_match,
          fmt("%.0f failures / 50 trials, worst signed excess %.3e", r.failures, r.worst_violation)};
}

Outcome criterion4() {
  Rng rng(1004);
  const TruncationContext ctx{256, 0};
  double worst_rt = 0.0;
  double worst_norm = 1e300;
  int trials = 0;
  while (trials < 50) {
    const int m = std::uniform_int_distribution<int>(1, 12)(rng);
    const auto seq = carleson_sequence(rng, m, 0.0, 0.9, 0.3);
    if (static_cast<int>(seq.size()) != m) continue;
    const auto products = oracle::carleson_products(values(seq));
    if (*std::min_element(products.begin(), products.end()) < 0.3) {
      return {false, "generated points violate the (C) target"};
    }
    ++trials;
    auto q = random_psd(rng, m, 0.2);
    const auto p = st_construct(q, seq, ctx, 0.2);
    // Independent image: P applied to unit kernel vectors built here.
    CMatrix v(256, m);
    for (int i = 0; i < m; ++i) {
      const cplx wbar = std::conj(seq[static_cast<std::size_t>(i)].value());
      cplx pw = 1.0;
      for (int n = 0; n < 256; ++n) {
        v(n, i) = pw;
        pw *= wbar;
      }
      v.col(i).normalize();
    }
    const CMatrix image = p.matrix() * v;
    const CMatrix gram = image.adjoint() * image;
    worst_rt = std::max(worst_rt, (q.matrix() - gram).cwiseAbs().maxCoeff());
    worst_norm = std::min(worst_norm, gram.diagonal().real().minCoeff());
  }
  const bool ok = worst_rt <= 1e-6 && worst_norm >= 0.2 - 1e-8;
  return {ok, fmt("max roundtrip error %.3e (tol 1e-6), min ||P k||^2 %.6f (>= 0.2 - 1e-8)", worst_rt, worst_norm)};
}

Outcome criterion5() {
  Rng rng(1005);
  double worst = -1e300;
  for (int t = 0; t < 100; ++t) {
    const int m = std::uniform_int_distribution<int>(2, 10)(rng);
    const auto g = szego_gram(uniform_points(rng, m, 0.95));
    std::vector<cplx> d;
    std::uniform_real_distribution<double> mod(0.05, 2.0);
    std::uniform_real_distribution<double> arg(0.0, 2 * std::numbers::pi);
    for (int i = 0; i < m; ++i) d.push_back(std::polar(mod(rng), arg(rng)));
    const auto c = congruence_diag(g, d);
    double dmin = 1e300;
    double dmax = 0.0;
    for (cplx x : d) {
      dmin = std::min(dmin, std::norm(x));
      dmax = std::max(dmax, std::norm(x));
    }
    const double gmin = oracle::bisect_lambda_min(g.matrix.matrix());
    const double gmax = oracle::bisect_lambda_max(g.matrix.matrix());
    const double cmin = oracle::bisect_lambda_min(c.matrix.matrix());
    const double cmax = oracle::bisect_lambda_max(c.matrix.matrix());
    const double scale = std::max(1.0, dmax * gmax);
    worst = std::max(worst, (dmin * gmin - cmin) / scale);
    worst = std::max(worst, (cmax - dmax * gmax) / scale);
  }
  return {worst <= 1e-10, fmt("worst relative excess %.3e (tol 1e-10)", worst)};
}

Outcome criterion6() {
  Rng rng(1006);
  const auto seq = radial_geometric(rng, 200, 0.9);
  const auto z = values(seq);
  const auto g = szego_gram(seq);

  const auto pc = partition_carleson(seq, 0.1);
  bool ok = pc.certified();
  for (const auto& cls : pc.classes) {
    std::vector<cplx> sub;
    for (int l : cls) sub.push_back(z[static_cast<std::size_t>(l)]);
    const auto pr = oracle::carleson_products(sub);
    if (*std::min_element(pr.begin(), pr.end()) < 0.1) ok = false;
  }
  const auto ps = partition_spectral(g, 0.1);
  ok = ok && ps.certified();
  for (const auto& cls : ps.classes) {
    if (oracle::bisect_lambda_min(compress(g, cls).matrix.matrix()) < 0.1) ok = false;
  }

  // Small instances against the exhaustive minimum.
  bool counts_ok = true;
  for (int t = 0; t < 8; ++t) {
    const int n = 6 + t % 5;
    const auto small = sample_points(rng, t % 2 ? PointFamily::clustered : PointFamily::radial_geometric, n, 0.95);
    const auto zs = values(small);
    const auto gs = szego_gram(small);
    const int best_c = oracle::minimal_partition_count(n, [&](std::uint32_t mask) {
      std::vector<cplx> sub;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) sub.push_back(zs[static_cast<std::size_t>(i)]);
      }
      const auto pr = oracle::carleson_products(sub);
      return *std::min_element(pr.begin(), pr.end()) >= 0.1;
    });
    const int best_s = oracle::minimal_partition_count(n, [&](std::uint32_t mask) {
      std::vector<Eigen::Index> idx;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) idx.push_back(i);
      }
      return oracle::bisect_lambda_min(principal_submatrix(gs.matrix, idx).matrix()) >= 0.1;
    });
    const int gc = static_cast<int>(partition_carleson(small, 0.1).class_count());
    const int gsp = static_cast<int>(partition_spectral(gs, 0.1).class_count());
    counts_ok = counts_ok && gc >= best_c && gc <= n && gsp >= best_s && gsp <= n;
  }
  std::ostringstream d;
  d << "200 points: carleson " << pc.class_count() << " classes, spectral " << ps.class_count()
    << " classes; brute-force comparison " << (counts_ok ? "ok" : "violated");
  return {ok && counts_ok, d.str()};
}

Outcome criterion7() {
  Rng rng(1007);
  double min_distinct = 1e300;
  double max_dup = 0.0;
  double min_frame = 1e300;
  for (int t = 0; t < 50; ++t) {
    const int m = std::uniform_int_distribution<int>(2, 10)(rng);
    std::vector<DiskPoint> p;
    for (int k = 0; k < m; ++k) p.push_back(uniform_disk_point(rng, 0.9));
    min_distinct = std::min(min_distinct, analyze(szego_gram(PointSequence(p))).riesz_c);
    p.push_back(p[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, m - 1)(rng))]);
    const auto r = analyze(szego_gram(PointSequence(p)));
    max_dup = std::max(max_dup, r.riesz_c);
    min_frame = std::min(min_frame, r.frame_A);
  }
  const bool ok = min_distinct > 0.0 && max_dup <= 1e-12 && min_frame > 0.0;
  std::ostringstream d;
  d << "distinct min lambda_min " << min_distinct << ", duplicated max lambda_min " << max_dup
    << " (<= 1e-12), min frame bound " << min_frame;
  return {ok, d.str()};
}

Outcome criterion8() {
  Rng rng(1008);
  const TruncationContext ctx{256, 0};
  std::vector<double> w(256);
  for (int n = 0; n < 256; ++n) w[static_cast<std::size_t>(n)] = std::pow(0.5, n);
  const auto p = diagonal_operator(w);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int m = std::uniform_int_distribution<int>(2, 8)(rng);
    const auto seq = uniform_points(rng, m, 0.9);
    const auto z = values(seq);
    const auto g = range_space_gram(p, seq, ctx);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const cplx k = 1.0 / (1.0 - 0.5 * z[i] * std::conj(z[j]));
        const double ni = 1.0 / (1.0 - 0.5 * std::norm(z[i]));
        const double nj = 1.0 / (1.0 - 0.5 * std::norm(z[j]));
        worst = std::max(worst, std::abs(g.matrix(i, j) - k / std::sqrt(ni * nj)));
      }
    }
  }
  return {worst <= 1e-8, fmt("max abs error %.3e (tol 1e-8)", worst)};
}

Outcome criterion9() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "kframes_acceptance_determinism";
  fs::create_directories(dir);
  auto run_once = [&](const std::string& name, std::string& stdout_text) {
    std::ostringstream out;
    std::ostringstream err;
    const auto path = (dir / name).string();
    const int code = cli::run({"verify", "--seed", "1009", "--trials", "10", "--out", path}, out, err);
    stdout_text = out.str();
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return std::make_pair(code, ss.str());
  };
  std::string out_a;
  std::string out_b;
  const auto a = run_once("a.json", out_a);
  const auto b = run_once("b.json", out_b);
  fs::remove_all(dir);
  const bool ok = a.first == 0 && b.first == 0 && !a.second.empty() && a.second == b.second && out_a == out_b;
  std::ostringstream d;
  d << "exit codes " << a.first << "/" << b.first << ", report " << a.second.size() << " bytes, "
    << (a.second == b.second ? "identical" : "different");
  return {ok, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"szego closed form vs series", criterion1},
      {"toeplitz covariance", criterion2},
      {"loewner chain", criterion3},
      {"positive operator roundtrip", criterion4},
      {"diagonal congruence bounds", criterion5},
      {"partition certificates", criterion6},
      {"finite frame/riesz dichotomy", criterion7},
      {"weighted hardy identification", criterion8},
      {"verify determinism", criterion9},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %zu [%s] %s: %s (%.2fs)\n", k + 1, criteria[k].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
