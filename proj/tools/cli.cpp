#include "cli.hpp"

#include "kframes/errors.hpp"
#include "kframes/frame_analysis.hpp"
#include "kframes/kernels.hpp"
#include "kframes/operator_factory.hpp"
#include "kframes/partitioner.hpp"
#include "kframes/serialize.hpp"
#include "kframes/verifier.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <ostream>

namespace kframes::cli {

namespace {

constexpr double kStRoundtripLimit = 1e-6;

/// Values that may come from the config file or from flags; flags win.
struct RunConfig {
  std::string command;
  std::optional<std::string> config;
  std::optional<std::string> points;
  std::optional<std::string> op;
  std::optional<std::string> q;
  std::optional<std::string> out;
  std::optional<std::string> csv;
  std::optional<int> order;
  std::optional<int> buffer;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<double> delta_target;
  std::optional<double> c_target;
  std::optional<double> delta;
  std::optional<std::string> strategy;
  bool presort = false;
};

template <typename T>
void fill_from(std::optional<T>& slot, const json& cfg, const char* key) {
  if (slot || !cfg.contains(key)) return;
  try {
    slot = cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config member '") + key + "': " + e.what());
  }
}

json load_config(RunConfig& rc) {
  if (!rc.config) return json::object();
  json cfg = read_json_file(*rc.config);
  if (!cfg.is_object()) throw Error(ErrorCode::ParseError, "config file must hold a JSON object");
  fill_from(rc.points, cfg, "points");
  fill_from(rc.op, cfg, "operator");
  fill_from(rc.q, cfg, "Q");
  fill_from(rc.out, cfg, "out");
  fill_from(rc.csv, cfg, "csv");
  fill_from(rc.order, cfg, "N");
  fill_from(rc.buffer, cfg, "buffer");
  fill_from(rc.seed, cfg, "seed");
  fill_from(rc.trials, cfg, "trials");
  fill_from(rc.delta_target, cfg, "delta_target");
  fill_from(rc.c_target, cfg, "c_target");
  fill_from(rc.delta, cfg, "delta");
  fill_from(rc.strategy, cfg, "strategy");
  if (!rc.presort && cfg.contains("presort")) rc.presort = cfg.at("presort").get<bool>();
  return cfg;
}

void require_positive(const std::optional<double>& v, const char* name) {
  if (v && !(*v > 0.0)) throw Error(ErrorCode::ConfigInvalid, std::string(name) + " must be positive");
}

TruncationContext context_of(const RunConfig& rc) {
  TruncationContext ctx{rc.order.value_or(256), rc.buffer.value_or(64)};
  if (ctx.order < 1 || ctx.buffer < 0) throw Error(ErrorCode::ConfigInvalid, "N must be >= 1 and buffer >= 0");
  return ctx;
}

PointSequence load_points(const RunConfig& rc) {
  if (!rc.points) throw Error(ErrorCode::ConfigInvalid, "--points is required");
  return points_from_json(read_json_file(*rc.points));
}

void emit(const std::optional<std::string>& path, const std::string& content, std::ostream& out) {
  if (path) {
    write_file_atomic(*path, content);
  } else {
    out << content;
  }
}

int cmd_gram(RunConfig& rc, std::ostream& out) {
  load_config(rc);
  const PointSequence seq = load_points(rc);
  const TruncationContext ctx = context_of(rc);
  Grammian g = rc.op ? range_space_gram(operator_from_json(read_json_file(*rc.op), ctx), seq, ctx) : szego_gram(seq);
  const BoundsReport bounds = analyze(g);
  if (rc.csv) write_file_atomic(*rc.csv, matrix_to_csv(g.matrix.matrix()));
  if (rc.out) {
    write_file_atomic(*rc.out, grammian_to_json(g).dump(2) + "\n");
    out << bounds_to_json(bounds).dump(2) << "\n";
  } else {
    out << json{{"grammian", grammian_to_json(g)}, {"bounds", bounds_to_json(bounds)}}.dump(2) << "\n";
  }
  return kSuccess;
}

int cmd_partition(RunConfig& rc, std::ostream& out, std::ostream& err) {
  load_config(rc);
  require_positive(rc.delta_target, "delta-target");
  require_positive(rc.c_target, "c-target");
  if (rc.delta_target && *rc.delta_target >= 1.0) throw Error(ErrorCode::ConfigInvalid, "delta-target must be < 1");
  const PointSequence seq = load_points(rc);
  const std::string strategy = rc.strategy.value_or("carleson");

  Partition partition;
  bool ok = false;
  if (strategy == "carleson") {
    partition = partition_carleson(seq, rc.delta_target.value_or(0.1), PartitionOptions{rc.presort});
    // Independent recomputation of each class's condition-(C) infimum.
    ok = true;
    for (const auto& cls : partition.classes) {
      std::vector<std::size_t> pos;
      for (int l : cls) {
        const auto it = std::find(seq.labels().begin(), seq.labels().end(), l);
        pos.push_back(static_cast<std::size_t>(it - seq.labels().begin()));
      }
      ok = ok && carleson_constants(seq.subset(pos)).infimum >= partition.target;
    }
  } else if (strategy == "spectral") {
    const TruncationContext ctx = context_of(rc);
    const Grammian g =
        rc.op ? range_space_gram(operator_from_json(read_json_file(*rc.op), ctx), seq, ctx) : szego_gram(seq);
    partition = partition_spectral(g, rc.c_target.value_or(0.1));
    ok = verify_partition(g, partition, partition.target).all_pass;
  } else {
    throw Error(ErrorCode::ConfigInvalid, "strategy must be 'carleson' or 'spectral'");
  }
  ok = ok && partition.certified();

  if (rc.csv) write_file_atomic(*rc.csv, partition_to_csv(partition, seq));
  emit(rc.out, partition_to_json(partition).dump(2) + "\n", out);
  if (rc.out) out << "classes: " << partition.class_count() << "\n";
  if (!ok) {
    err << "certificate check failed: some class misses target " << partition.target << "\n";
    return kCertificateFailure;
  }
  return kSuccess;
}

int cmd_construct_st(RunConfig& rc, std::ostream& out, std::ostream& err) {
  load_config(rc);
  require_positive(rc.delta, "delta");
  const TruncationContext ctx = context_of(rc);

  std::optional<HermitianMatrix> q;
  std::optional<PointSequence> seq;
  if (rc.op) {
    const json spec = read_json_file(*rc.op);
    if (spec.contains("Q")) q = HermitianMatrix(matrix_from_json(spec.at("Q")));
    if (spec.contains("points")) seq = points_from_json(spec.at("points"));
    if (!rc.delta && spec.contains("delta")) rc.delta = spec.at("delta").get<double>();
  }
  if (rc.q) {
    try {
      q = HermitianMatrix(matrix_from_json(read_json_file(*rc.q)));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NonHermitian || e.code() == ErrorCode::DimensionMismatch) {
        throw Error(ErrorCode::ParseError, e.what());
      }
      throw;
    }
  }
  if (rc.points) seq = load_points(rc);
  if (!q) throw Error(ErrorCode::ConfigInvalid, "a target Grammian is required (--q or operator spec 'Q')");
  if (!seq) throw Error(ErrorCode::ConfigInvalid, "--points is required");
  const double delta = rc.delta.value_or(q->matrix().diagonal().real().minCoeff());

  const PositiveOperator p = st_construct(*q, *seq, ctx, delta);
  const StRoundtrip rt = st_roundtrip(p, *q, *seq, ctx);
  const json op_json{{"type", "custom"},
                     {"id", "st"},
                     {"N", ctx.order},
                     {"buffer", ctx.buffer},
                     {"matrix", matrix_to_json(p.matrix())}};
  if (rc.out) write_file_atomic(*rc.out, op_json.dump(2) + "\n");
  out << json{{"roundtrip_error", rt.roundtrip_error},
              {"min_norm_sq", rt.min_norm_sq},
              {"delta", delta},
              {"N", ctx.order}}
              .dump(2)
      << "\n";
  if (!(rt.roundtrip_error <= kStRoundtripLimit)) {
    err << "roundtrip error " << rt.roundtrip_error << " exceeds " << kStRoundtripLimit << "\n";
    return kCertificateFailure;
  }
  return kSuccess;
}

int cmd_verify(RunConfig& rc, std::ostream& out) {
  const json cfg = load_config(rc);
  SuiteConfig suite;
  if (cfg.contains("suite")) {
    suite = suite_config_from_json(cfg.at("suite"));
  } else {
    json base = json::object();
    for (const char* key : {"seed", "trials", "N", "buffer", "point_families", "tolerances"}) {
      if (cfg.contains(key)) base[key] = cfg.at(key);
    }
    suite = suite_config_from_json(base);
  }
  if (rc.seed) suite.seed = *rc.seed;
  if (rc.trials) suite.trials = *rc.trials;
  if (rc.order) suite.order = *rc.order;
  if (rc.buffer) suite.buffer = *rc.buffer;
  suite.validate();

  const SuiteReport report = run_suite(suite);
  emit(rc.out, suite_report_to_json(report).dump(2) + "\n", out);
  if (rc.out) {
    for (const auto& r : report.results) {
      out << (r.passed() ? "PASS " : "FAIL ") << r.check_id << "  trials=" << r.trials << " failures=" << r.failures
          << " worst_violation=" << r.worst_violation << "\n";
    }
  }
  return report.passed() ? kSuccess : kVerificationFailure;
}

void add_common(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--config", rc.config, "JSON config file; flags override its members");
  sub->add_option("--points", rc.points, "JSON array of [re, im] points");
  sub->add_option("--operator", rc.op, "operator spec JSON");
  sub->add_option("--out", rc.out, "output path (default: standard output)");
  sub->add_option("--csv", rc.csv, "CSV export path");
  sub->add_option("--N", rc.order, "truncation order");
  sub->add_option("--buffer", rc.buffer, "extra Taylor orders before compression");
  sub->add_option("--seed", rc.seed, "random seed");
  sub->add_option("--delta-target", rc.delta_target, "condition-(C) target for the carleson strategy");
  sub->add_option("--c-target", rc.c_target, "lambda_min target for the spectral strategy");
  sub->add_option("--strategy", rc.strategy, "carleson|spectral");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"kframes: Grammians, frame bounds and Riesz partitions of Hardy-space kernel functions"};
  app.require_subcommand(1);
  RunConfig rc;

  auto* gram = app.add_subcommand("gram", "Grammian of normalized kernel functions with bounds report");
  auto* part = app.add_subcommand("partition", "partition points into certified Riesz classes");
  auto* st = app.add_subcommand("construct-st", "positive operator realizing a target Grammian");
  auto* verify = app.add_subcommand("verify", "seeded numerical replay of the kernel identities");
  for (auto* sub : {gram, part, st, verify}) add_common(sub, rc);
  part->add_flag("--presort", rc.presort, "consume points by ascending |z|");
  st->add_option("--q", rc.q, "target Grammian matrix JSON");
  st->add_option("--delta", rc.delta, "lower bound for the diagonal of Q (default: its minimum)");
  verify->add_option("--trials", rc.trials, "trials per check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInputError;
  }

  try {
    if (gram->parsed()) return cmd_gram(rc, out);
    if (part->parsed()) return cmd_partition(rc, out, err);
    if (st->parsed()) return cmd_construct_st(rc, out, err);
    if (verify->parsed()) return cmd_verify(rc, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return is_input_error(e.code()) ? kInputError : kNumericalError;
  } catch (const json::exception& e) {
    err << "ParseError: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace kframes::cli
