#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hexfold/geometry.hpp"
#include "hexfold/shapes.hpp"

namespace hexfold {

/// Key/value pairs written as a leading {"meta": {...}} line.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// One JSON object per line: {"center":["x","y"],"diameter":"d"}.  Numbers
/// are decimal strings; blank lines and "meta" objects are skipped.  Throws
/// std::runtime_error with the line number on malformed input.
std::vector<Disk> read_disks_jsonl(std::istream& in);
void write_disks_jsonl(std::ostream& out, const std::vector<Disk>& disks, const Metadata& meta = {});

/// {"center":["x","y"],"vertices":[["x","y"],...]}
std::vector<ConvexShape> read_shapes_jsonl(std::istream& in);
void write_shapes_jsonl(std::ostream& out, const std::vector<ConvexShape>& shapes, const Metadata& meta = {});

/// Exact decimal form of a rational coordinate; throws std::invalid_argument
/// for values that have none.
std::string decimal_string(const ExactScalar& value);

}  // namespace hexfold
