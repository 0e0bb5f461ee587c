#ifndef SCCURVE_IO_HPP
#define SCCURVE_IO_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sccurve/curve.hpp"
#include "sccurve/proximal.hpp"
#include "sccurve/report.hpp"
#include "sccurve/width.hpp"

namespace sccurve {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Thrown for malformed input files, specs and configs.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json space_to_json(const Space& space);
Space space_from_json(const Json& j);

/// Point payload: Euclidean coordinates; hyperboloid (x0, x1, x2); tree
/// [edge, offset]; spider [leg, radius]; book [sheet, a, b]; product [left, right].
Json point_to_json(const Point& p);
Point point_from_json(const Space& space, const Json& j);

std::string mode_label(CurveMode mode);
CurveMode mode_from_label(const std::string& s);

/// {"schema_version", "space", "mode", "samples": [{"t", "p"}], "domain_end"?}
Json curve_to_json(const Curve& curve);
Curve curve_from_json(const Json& j);

Json report_to_json(const ViolationReport& r);
Json report_to_json(const BoundReport& r);
Json report_to_json(const WidthReport& r);
Json report_to_json(const ResolventResult& r);

/// Flat CSV for bound audits; the header carries the schema version column.
std::string bound_csv_header();
std::string bound_csv_row(const BoundReport& r);

/// "euclidean:N", "hyperbolic", "spider:K", "spider:K:L", "spider:K:L1,...,LK",
/// "book:K", "tree:PATH", "product:A|B" (split at the first '|').
Space parse_space_spec(const std::string& spec);

/// Tree description: lines "vertex NAME" and "edge U V LENGTH"; '#' starts a
/// comment. Vertices named only in edges are added in order of appearance.
TreeGraph parse_tree(const std::string& text);
TreeGraph load_tree_file(const std::string& path);

/// "key = value" lines, '#' comments, blank lines ignored.
std::map<std::string, std::string> parse_config(const std::string& text);

/// Point from a comma separated coordinate list in the payload layout above.
Point parse_point(const Space& space, const std::string& text);

std::string read_file(const std::string& path);
/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

/// Serialized JSON text followed by a newline.
std::string dump(const Json& j);

}  // namespace sccurve

#endif  // SCCURVE_IO_HPP
