#pragma once

#include "kframes/frame_analysis.hpp"
#include "kframes/inner_function.hpp"
#include "kframes/kernels.hpp"
#include "kframes/operator_factory.hpp"
#include "kframes/partitioner.hpp"
#include "kframes/verifier.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace kframes {

using nlohmann::json;

// All parsers raise Error(ParseError) on malformed input.

json point_to_json(const DiskPoint& p);
json points_to_json(const PointSequence& seq);
/// Accepts an array of [re, im] pairs, or an object with a "points" member
/// holding one. Empty input is a parse error.
PointSequence points_from_json(const json& j);

/// Row-major array of rows, each a list of [re, im] pairs.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);
/// "re+imj" cells, one row per line.
std::string matrix_to_csv(const CMatrix& m);

json grammian_to_json(const Grammian& g);
Grammian grammian_from_json(const json& j);

json bounds_to_json(const BoundsReport& r);
json extremes_to_json(const EigenExtremes& e);

json inner_to_json(const InnerFunction& phi);
InnerFunction inner_from_json(const json& j);

/// Operator spec: {"type": ..., "N": ..., "buffer"?: ...} plus the type's
/// fields. N and buffer fall back to `fallback` when absent.
PositiveOperator operator_from_json(const json& j, const TruncationContext& fallback);

json partition_to_json(const Partition& p);
/// label,class,abs_z,arg_z
std::string partition_to_csv(const Partition& p, const PointSequence& seq);

json suite_config_to_json(const SuiteConfig& cfg);
/// Missing members keep their defaults. Throws ConfigInvalid / ParseError.
SuiteConfig suite_config_from_json(const json& j);
json check_result_to_json(const CheckResult& r);
json suite_report_to_json(const SuiteReport& r);

json read_json_file(const std::filesystem::path& path);

/// Writes via a sibling temporary file and rename, so the target is either
/// the old content or the complete new content.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace kframes
