#include "kframes/serialize.hpp"

#include "kframes/errors.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unistd.h>

namespace kframes {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_fail("expected [re, im] pair, got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    parse_fail(std::string("member '") + key + "': " + e.what());
  }
}

std::string format_complex_cell(cplx z) {
  std::ostringstream os;
  os << std::setprecision(17) << z.real() << (z.imag() < 0 || std::signbit(z.imag()) ? "" : "+") << z.imag() << "j";
  return os.str();
}

}  // namespace

json point_to_json(const DiskPoint& p) { return complex_to_json(p.value()); }

json points_to_json(const PointSequence& seq) {
  json out = json::array();
  for (const auto& p : seq.points()) out.push_back(point_to_json(p));
  return out;
}

PointSequence points_from_json(const json& j) {
  const json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("points")) parse_fail("object has no 'points' member");
    arr = &j.at("points");
  }
  if (!arr->is_array()) parse_fail("points must be an array of [re, im] pairs");
  if (arr->empty()) parse_fail("point list is empty");
  std::vector<DiskPoint> pts;
  for (const auto& e : *arr) {
    try {
      pts.emplace_back(complex_from_json(e));
    } catch (const Error& err) {
      if (err.code() == ErrorCode::InvalidPoint) parse_fail(err.what());
      throw;
    }
  }
  if (j.is_object() && j.contains("labels")) {
    auto labels = get_or<std::vector<int>>(j, "labels", {});
    if (labels.size() != pts.size()) parse_fail("label count differs from point count");
    return PointSequence(std::move(pts), std::move(labels));
  }
  return PointSequence(std::move(pts));
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  const json* rows = &j;
  if (j.is_object()) {
    if (j.contains("entries")) {
      rows = &j.at("entries");
    } else if (j.contains("matrix")) {
      rows = &j.at("matrix");
    } else {
      parse_fail("matrix object needs 'entries' or 'matrix'");
    }
  }
  if (!rows->is_array() || rows->empty()) parse_fail("matrix must be a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(rows->size());
  const auto m = static_cast<Eigen::Index>((*rows)[0].is_array() ? (*rows)[0].size() : 0);
  if (m == 0) parse_fail("matrix rows must be nonempty arrays");
  CMatrix out(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = (*rows)[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m) parse_fail("ragged matrix rows");
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto& cell = row[static_cast<std::size_t>(k)];
      out(i, k) = cell.is_number() ? cplx{cell.get<double>(), 0.0} : complex_from_json(cell);
    }
  }
  return out;
}

std::string matrix_to_csv(const CMatrix& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << format_complex_cell(m(i, j));
    os << '\n';
  }
  return os.str();
}

json grammian_to_json(const Grammian& g) {
  json prov{{"space", g.provenance.space},
            {"operator_id", g.provenance.operator_id ? json(*g.provenance.operator_id) : json(nullptr)},
            {"labels", g.provenance.labels}};
  json pts = json::array();
  for (const auto& p : g.provenance.points) pts.push_back(point_to_json(p));
  prov["points"] = std::move(pts);
  if (!g.provenance.notes.empty()) prov["notes"] = g.provenance.notes;
  return json{{"dim", g.dim()},
              {"entries", matrix_to_json(g.matrix.matrix())},
              {"provenance", std::move(prov)},
              {"normalized", g.normalized},
              {"truncation_error", g.truncation_error}};
}

Grammian grammian_from_json(const json& j) {
  if (!j.is_object() || !j.contains("entries")) parse_fail("Grammian JSON needs 'entries'");
  Grammian g;
  try {
    g.matrix = HermitianMatrix(matrix_from_json(j.at("entries")));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    parse_fail(e.what());
  }
  if (j.contains("dim") && j.at("dim").get<Eigen::Index>() != g.dim()) parse_fail("'dim' disagrees with entries");
  g.normalized = get_or<bool>(j, "normalized", false);
  g.truncation_error = get_or<double>(j, "truncation_error", 0.0);
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    g.provenance.space = get_or<std::string>(p, "space", "H2");
    if (p.contains("operator_id") && p.at("operator_id").is_string()) {
      g.provenance.operator_id = p.at("operator_id").get<std::string>();
    }
    g.provenance.labels = get_or<std::vector<int>>(p, "labels", {});
    if (p.contains("points")) {
      for (const auto& e : p.at("points")) g.provenance.points.emplace_back(complex_from_json(e));
    }
    g.provenance.notes = get_or<std::vector<std::string>>(p, "notes", {});
  }
  if (!g.provenance.labels.empty() && static_cast<Eigen::Index>(g.provenance.labels.size()) != g.dim()) {
    parse_fail("label count differs from Grammian dimension");
  }
  return g;
}

json extremes_to_json(const EigenExtremes& e) {
  return json{{"lambda_min", e.lambda_min},
              {"lambda_max", e.lambda_max},
              {"smallest_above", e.smallest_above},
              {"rank_tol", e.rank_tol}};
}

json bounds_to_json(const BoundsReport& r) {
  return json{{"bessel_B", r.bessel_B},
              {"riesz_c", r.riesz_c},
              {"frame_A", r.frame_A},
              {"lower_norm_delta", r.lower_norm_delta},
              {"is_bessel", r.is_bessel},
              {"is_bounded_below", r.is_bounded_below},
              {"is_riesz", r.is_riesz},
              {"is_frame", r.is_frame},
              {"riesz_tol", r.riesz_tol},
              {"rank_tol", r.rank_tol},
              {"eigen_extremes", {{"lambda_min", r.riesz_c}, {"lambda_max", r.bessel_B}}}};
}

json inner_to_json(const InnerFunction& phi) {
  json zeros = json::array();
  for (const auto& a : phi.zeros()) zeros.push_back(point_to_json(a));
  return json{{"zeros", std::move(zeros)}, {"m", phi.monomial_power()}, {"unimodular", complex_to_json(phi.unimodular())}};
}

InnerFunction inner_from_json(const json& j) {
  if (!j.is_object()) parse_fail("inner function must be an object");
  std::vector<DiskPoint> zeros;
  if (j.contains("zeros")) {
    if (!j.at("zeros").is_array()) parse_fail("'zeros' must be an array");
    for (const auto& e : j.at("zeros")) {
      try {
        zeros.emplace_back(complex_from_json(e));
      } catch (const Error& err) {
        if (err.code() == ErrorCode::InvalidPoint) parse_fail(err.what());
        throw;
      }
    }
  }
  const int m = get_or<int>(j, "m", 0);
  const cplx u = j.contains("unimodular") ? complex_from_json(j.at("unimodular")) : cplx{1.0, 0.0};
  try {
    return InnerFunction(std::move(zeros), m, u);
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

PositiveOperator operator_from_json(const json& j, const TruncationContext& fallback) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    parse_fail("operator spec needs a string 'type'");
  }
  const std::string type = j.at("type").get<std::string>();
  TruncationContext ctx{get_or<int>(j, "N", fallback.order), get_or<int>(j, "buffer", fallback.buffer)};
  if (ctx.order < 1 || ctx.buffer < 0) parse_fail("operator spec has invalid N or buffer");

  const auto inner = [&] {
    if (!j.contains("inner")) parse_fail("operator type '" + type + "' needs 'inner'");
    return inner_from_json(j.at("inner"));
  };

  if (type == "identity") return identity_operator(ctx.order);
  if (type == "diagonal") {
    auto w = get_or<std::vector<double>>(j, "weights", {});
    if (w.empty() && j.contains("geometric")) {
      const double s = j.at("geometric").get<double>();
      w.resize(static_cast<std::size_t>(ctx.order));
      for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::pow(s, static_cast<double>(k));
    }
    if (static_cast<int>(w.size()) != ctx.order) {
      parse_fail("diagonal operator needs exactly N weights (or 'geometric': s)");
    }
    return diagonal_operator(w);
  }
  if (type == "projection_phiH2") return projection_phi_H2(inner(), ctx);
  if (type == "projection_model") return projection_model_space(inner(), ctx);
  if (type == "projection_monomial") {
    const auto ex = get_or<std::vector<int>>(j, "excluded", {});
    return projection_monomial_span(std::set<int>(ex.begin(), ex.end()), ctx.order);
  }
  if (type == "c_plus_phi") return projection_c_plus_phi(inner(), ctx);
  if (type == "st") {
    if (!j.contains("Q") || !j.contains("points")) parse_fail("st operator needs 'Q' and 'points'");
    HermitianMatrix q;
    try {
      q = HermitianMatrix(matrix_from_json(j.at("Q")));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      parse_fail(e.what());
    }
    const PointSequence seq = points_from_json(j.at("points"));
    double delta = get_or<double>(j, "delta", q.matrix().diagonal().real().minCoeff());
    return st_construct(q, seq, ctx, delta);
  }
  if (type == "custom") {
    if (!j.contains("matrix")) parse_fail("custom operator needs 'matrix'");
    HermitianMatrix m;
    try {
      m = HermitianMatrix(matrix_from_json(j.at("matrix")));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      parse_fail(e.what());
    }
    return custom_operator(m, get_or<std::string>(j, "id", "custom"));
  }
  parse_fail("unknown operator type '" + type + "'");
}

json partition_to_json(const Partition& p) {
  json certs = json::array();
  for (const auto& c : p.certificates) {
    certs.push_back(json{{"carleson_inf", c.carleson_inf ? json(*c.carleson_inf) : json(nullptr)},
                         {"lambda_min", c.lambda_min},
                         {"size", c.size}});
  }
  const char* target_key = p.strategy == Strategy::carleson_greedy ? "delta_target" : "c_target";
  return json{{"strategy", to_string(p.strategy)},
              {"targets", {{target_key, p.target}}},
              {"classes", p.classes},
              {"certificates", std::move(certs)},
              {"certified", p.certified()}};
}

std::string partition_to_csv(const Partition& p, const PointSequence& seq) {
  const auto cls = p.class_of(seq.labels());
  std::ostringstream os;
  os << std::setprecision(17) << "label,class,abs_z,arg_z\n";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    os << seq.labels()[i] << ',' << cls[i] << ',' << seq[i].modulus() << ',' << std::arg(seq[i].value()) << '\n';
  }
  return os.str();
}

json suite_config_to_json(const SuiteConfig& cfg) {
  json families = json::array();
  for (auto f : cfg.point_families) families.push_back(to_string(f));
  const auto& t = cfg.tolerances;
  return json{{"seed", cfg.seed},
              {"trials", cfg.trials},
              {"N", cfg.order},
              {"buffer", cfg.buffer},
              {"point_families", std::move(families)},
              {"tolerances",
               {{"toeplitz_covariance", t.toeplitz_covariance},
                {"loewner_chain", t.loewner_chain},
                {"norm_sandwich", t.norm_sandwich},
                {"st_roundtrip", t.st_roundtrip},
                {"st_norm", t.st_norm},
                {"diag_sandwich", t.diag_sandwich},
                {"weighted_hardy", t.weighted_hardy}}}};
}

SuiteConfig suite_config_from_json(const json& j) {
  if (!j.is_object()) parse_fail("suite config must be an object");
  SuiteConfig cfg;
  cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
  cfg.trials = get_or<int>(j, "trials", cfg.trials);
  cfg.order = get_or<int>(j, "N", cfg.order);
  cfg.buffer = get_or<int>(j, "buffer", cfg.buffer);
  if (j.contains("point_families")) {
    cfg.point_families.clear();
    for (const auto& f : j.at("point_families")) {
      if (!f.is_string()) parse_fail("point family names must be strings");
      cfg.point_families.push_back(point_family_from_string(f.get<std::string>()));
    }
  }
  if (j.contains("tolerances")) {
    const auto& tj = j.at("tolerances");
    if (!tj.is_object()) parse_fail("'tolerances' must be an object");
    auto& t = cfg.tolerances;
    const std::pair<const char*, double*> fields[] = {
        {"toeplitz_covariance", &t.toeplitz_covariance}, {"loewner_chain", &t.loewner_chain},
        {"norm_sandwich", &t.norm_sandwich},             {"st_roundtrip", &t.st_roundtrip},
        {"st_norm", &t.st_norm},                         {"diag_sandwich", &t.diag_sandwich},
        {"weighted_hardy", &t.weighted_hardy}};
    for (const auto& [key, slot] : fields) *slot = get_or<double>(tj, key, *slot);
    for (const auto& [key, value] : tj.items()) {
      bool known = false;
      for (const auto& f : fields) known = known || key == f.first;
      if (!known) throw Error(ErrorCode::ConfigInvalid, "unknown tolerance '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

json check_result_to_json(const CheckResult& r) {
  json out{{"check_id", r.check_id},
           {"trials", r.trials},
           {"failures", r.failures},
           {"worst_violation", r.worst_violation},
           {"tolerances", r.tolerances},
           {"passed", r.passed()}};
  if (r.witness) out["witness"] = *r.witness;
  return out;
}

json suite_report_to_json(const SuiteReport& r) {
  json results = json::array();
  for (const auto& c : r.results) results.push_back(check_result_to_json(c));
  return json{{"config", suite_config_to_json(r.config)}, {"results", std::move(results)}, {"passed", r.passed()}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_fail("'" + path.string() + "': " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw Error(ErrorCode::ParseError, "short write to '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::ParseError, "cannot move report into '" + path.string() + "': " + ec.message());
  }
}

}  // namespace kframes
