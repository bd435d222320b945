#include "hexfold/io.hpp"

#include <stdexcept>

#include "json.hpp"

namespace hexfold {

namespace {

using nlohmann::json;

Rational number(const json& j) {
  if (!j.is_string()) throw std::invalid_argument("numbers must be decimal strings");
  return parse_decimal(j.get<std::string>());
}

Point point(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("a point is a pair of decimal strings");
  return {ExactScalar(number(j[0])), ExactScalar(number(j[1]))};
}

json point_json(const Point& p) { return json::array({decimal_string(p.x), decimal_string(p.y)}); }

template <class Parse>
auto read_lines(std::istream& in, Parse parse) {
  std::vector<decltype(parse(json{}))> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
      if (j.contains("meta")) continue;
      out.push_back(parse(j));
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_meta(std::ostream& out, const Metadata& meta) {
  if (meta.empty()) return;
  json m = json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  out << json{{"meta", m}}.dump() << '\n';
}

}  // namespace

std::string decimal_string(const ExactScalar& value) {
  if (!value.is_rational()) throw std::invalid_argument("irrational value " + value.to_string());
  std::string s = format_rational(value.rational_part());
  if (s.find('/') != std::string::npos) throw std::invalid_argument("no exact decimal for " + s);
  return s;
}

std::vector<Disk> read_disks_jsonl(std::istream& in) {
  return read_lines(in, [](const json& j) {
    const Rational d = number(j.at("diameter"));
    if (d <= 0) throw std::invalid_argument("diameter must be positive");
    return Disk{point(j.at("center")), ExactScalar(d)};
  });
}

void write_disks_jsonl(std::ostream& out, const std::vector<Disk>& disks, const Metadata& meta) {
  write_meta(out, meta);
  for (const Disk& d : disks) {
    out << json{{"center", point_json(d.center)}, {"diameter", decimal_string(d.diameter)}}.dump() << '\n';
  }
}

std::vector<ConvexShape> read_shapes_jsonl(std::istream& in) {
  return read_lines(in, [](const json& j) {
    ConvexShape s;
    s.center = point(j.at("center"));
    for (const json& v : j.at("vertices")) s.vertices.push_back(point(v));
    validate_shape(s);
    return s;
  });
}

void write_shapes_jsonl(std::ostream& out, const std::vector<ConvexShape>& shapes, const Metadata& meta) {
  write_meta(out, meta);
  for (const ConvexShape& s : shapes) {
    json vertices = json::array();
    for (const Point& v : s.vertices) vertices.push_back(point_json(v));
    out << json{{"center", point_json(s.center)}, {"vertices", vertices}}.dump() << '\n';
  }
}

}  // namespace hexfold
