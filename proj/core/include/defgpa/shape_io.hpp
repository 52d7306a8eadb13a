#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "defgpa/shapes.hpp"

namespace defgpa {

enum class ShapeFormat { Json, Csv };

/// Parses "json" / "csv" (FormatError otherwise).
ShapeFormat parse_shape_format(const std::string& name);

/// JSON document:
///   {"d":2,"m":3,"n":2,"shapes":[{"id":"s0","points":[[x,y],null,[x,y]]}, ...]}
/// `null` marks a missing point. "n" and "id" are optional.
ShapeSet load_shapes_json(std::istream& in);
void save_shapes_json(std::ostream& out, const ShapeSet& set);

/// One CSV shape: m rows of d comma-separated numbers; an empty row is a
/// missing point. `expected_dim` of 0 infers d from the first non-empty row.
Shape load_shape_csv(std::istream& in, std::string id = {}, Index expected_dim = 0);
void save_shape_csv(std::ostream& out, const Shape& shape);

/// A manifest lists one CSV path per line (relative paths resolve against the
/// manifest's directory; blank lines and lines starting with '#' are skipped).
ShapeSet load_shapes_csv(const std::filesystem::path& manifest);
/// Writes <dir>/<id>.csv per shape plus <dir>/<manifest_name>.
void save_shapes_csv(const std::filesystem::path& dir, const ShapeSet& set,
                     const std::string& manifest_name = "manifest.txt");

/// Dispatches on format; for CSV the path is the manifest.
ShapeSet load_shapes(const std::filesystem::path& path, ShapeFormat format);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace defgpa
