#include "defgpa/shape_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "defgpa/error.hpp"

namespace defgpa {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& token, const std::string& where) {
  const std::string t = trim(token);
  double value = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (t.empty() || ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::FormatError, "cannot parse number '" + t + "' in " + where);
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FormatError, "cannot open " + path.string());
  return in;
}

}  // namespace

ShapeFormat parse_shape_format(const std::string& name) {
  if (name == "json") return ShapeFormat::Json;
  if (name == "csv") return ShapeFormat::Csv;
  throw Error(ErrorCode::FormatError, "unknown shape format '" + name + "'");
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw Error(ErrorCode::FormatError, "cannot format number");
  return std::string(buf, ptr);
}

ShapeSet load_shapes_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("malformed JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw Error(ErrorCode::FormatError, "top level must be an object");
    const Index d = doc.at("d").get<Index>();
    const Index m = doc.at("m").get<Index>();
    const json& shapes = doc.at("shapes");
    if (d < 1 || m < 1 || !shapes.is_array() || shapes.empty()) {
      throw Error(ErrorCode::FormatError, "need d >= 1, m >= 1 and a non-empty shapes array");
    }
    if (doc.contains("n") && doc.at("n").get<std::size_t>() != shapes.size()) {
      throw Error(ErrorCode::FormatError, "'n' does not match the number of shapes");
    }
    std::vector<Shape> out;
    out.reserve(shapes.size());
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      const json& s = shapes[i];
      const json& pts = s.at("points");
      if (!pts.is_array() || static_cast<Index>(pts.size()) != m) {
        throw Error(ErrorCode::FormatError,
                    "shape " + std::to_string(i) + " does not have exactly m points");
      }
      Matrix p(d, m);
      Visibility vis(static_cast<std::size_t>(m), false);
      for (Index j = 0; j < m; ++j) {
        const json& pt = pts[static_cast<std::size_t>(j)];
        if (pt.is_null()) continue;
        if (!pt.is_array() || static_cast<Index>(pt.size()) != d) {
          throw Error(ErrorCode::FormatError, "shape " + std::to_string(i) + " point " +
                                                  std::to_string(j) + " is not a d-vector");
        }
        for (Index r = 0; r < d; ++r) {
          const json& v = pt[static_cast<std::size_t>(r)];
          if (!v.is_number()) throw Error(ErrorCode::FormatError, "coordinate is not a number");
          p(r, j) = v.get<double>();
        }
        vis[static_cast<std::size_t>(j)] = true;
      }
      std::string id = s.contains("id") ? s.at("id").get<std::string>() : std::string{};
      out.emplace_back(std::move(p), std::move(vis), std::move(id));
    }
    return ShapeSet(std::move(out));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("invalid shape document: ") + e.what());
  }
}

void save_shapes_json(std::ostream& out, const ShapeSet& set) {
  json doc;
  doc["d"] = set.dim();
  doc["m"] = set.points();
  doc["n"] = set.count();
  json shapes = json::array();
  for (const Shape& s : set) {
    json pts = json::array();
    for (Index j = 0; j < s.size(); ++j) {
      if (!s.visible(j)) {
        pts.push_back(nullptr);
        continue;
      }
      json pt = json::array();
      for (Index r = 0; r < s.dim(); ++r) pt.push_back(s.points()(r, j));
      pts.push_back(std::move(pt));
    }
    shapes.push_back({{"id", s.id()}, {"points", std::move(pts)}});
  }
  doc["shapes"] = std::move(shapes);
  out << doc.dump() << '\n';
}

Shape load_shape_csv(std::istream& in, std::string id, Index expected_dim) {
  std::vector<std::vector<double>> rows;
  std::string line;
  Index d = expected_dim;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    std::vector<double> row;
    bool blank = true;
    for (char c : t) blank = blank && (c == ',' || c == ' ' || c == '\t');
    if (!blank) {
      std::stringstream ss(t);
      std::string cell;
      const std::string where = "line " + std::to_string(line_no);
      while (std::getline(ss, cell, ',')) row.push_back(parse_double(cell, where));
      if (d == 0) d = static_cast<Index>(row.size());
      if (static_cast<Index>(row.size()) != d) {
        throw Error(ErrorCode::FormatError, "line " + std::to_string(line_no) +
                                                " does not have " + std::to_string(d) +
                                                " columns");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || d == 0) throw Error(ErrorCode::FormatError, "CSV shape has no points");
  Matrix p(d, static_cast<Index>(rows.size()));
  Visibility vis(rows.size(), false);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].empty()) continue;
    for (Index r = 0; r < d; ++r) p(r, static_cast<Index>(j)) = rows[j][static_cast<std::size_t>(r)];
    vis[j] = true;
  }
  return Shape(std::move(p), std::move(vis), std::move(id));
}

void save_shape_csv(std::ostream& out, const Shape& shape) {
  for (Index j = 0; j < shape.size(); ++j) {
    if (shape.visible(j)) {
      for (Index r = 0; r < shape.dim(); ++r) {
        if (r > 0) out << ',';
        out << format_double(shape.points()(r, j));
      }
    }
    out << '\n';
  }
}

ShapeSet load_shapes_csv(const std::filesystem::path& manifest) {
  std::ifstream in = open_input(manifest);
  const std::filesystem::path base = manifest.parent_path();
  std::vector<Shape> shapes;
  Index d = 0;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::filesystem::path path(t);
    if (path.is_relative()) path = base / path;
    std::ifstream shape_in = open_input(path);
    shapes.push_back(load_shape_csv(shape_in, path.stem().string(), d));
    d = shapes.back().dim();
  }
  if (shapes.empty()) throw Error(ErrorCode::FormatError, "manifest lists no shapes");
  return ShapeSet(std::move(shapes));
}

void save_shapes_csv(const std::filesystem::path& dir, const ShapeSet& set,
                     const std::string& manifest_name) {
  std::filesystem::create_directories(dir);
  std::ofstream manifest(dir / manifest_name);
  for (const Shape& s : set) {
    const std::string file = s.id() + ".csv";
    std::ofstream out(dir / file);
    save_shape_csv(out, s);
    manifest << file << '\n';
  }
}

ShapeSet load_shapes(const std::filesystem::path& path, ShapeFormat format) {
  if (format == ShapeFormat::Csv) return load_shapes_csv(path);
  std::ifstream in = open_input(path);
  return load_shapes_json(in);
}

}  // namespace defgpa
