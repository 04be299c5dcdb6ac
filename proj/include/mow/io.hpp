#pragma once

#include "mow/geometry.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace mow {

// Polygon text format:
//   n h          vertex count of the outer ring, number of holes
//   x y          n lines
//   m            per hole: vertex count, then m lines of x y
// '#' starts a comment, blank lines are skipped. Coordinates are written
// with enough digits to round-trip through text.
Polygon read_polygon(std::istream& in);
void write_polygon(std::ostream& out, const Polygon& poly);

Polygon load_polygon(const std::string& path);
void save_polygon(const std::string& path, const Polygon& poly);

// Tour text format: k, then k lines of x y (closed implicitly).
std::vector<Point> read_tour(std::istream& in);
void write_tour(std::ostream& out, const std::vector<Point>& pts);

std::vector<Point> load_tour(const std::string& path);
void save_tour(const std::string& path, const std::vector<Point>& pts);

} // namespace mow
