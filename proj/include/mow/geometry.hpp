#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mow {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

double dist(Point a, Point b);
double dot(Point a, Point b);
double cross(Point a, Point b);

// Simple polygon with optional holes. The outer ring is counterclockwise,
// holes are clockwise. Rings are closed implicitly (last vertex connects
// back to the first).
struct Polygon {
    std::vector<Point> outer;
    std::vector<std::vector<Point>> holes;

    double area() const;   // outer minus holes
    void bounding_box(Point& lo, Point& hi) const;
};

// Axis-aligned unit decomposition: cell (i,j) spans
// [offset_x + i*cell_size, offset_x + (i+1)*cell_size) x [... j ...).
struct GridSpec {
    double cell_size = 1.0;
    double offset_x = 0.0;
    double offset_y = 0.0;

    Point cell_origin(int i, int j) const {
        return {offset_x + i * cell_size, offset_y + j * cell_size};
    }
    Point cell_center(int i, int j) const {
        return {offset_x + (i + 0.5) * cell_size, offset_y + (j + 0.5) * cell_size};
    }
};

using PixelCoord = std::pair<int, int>; // (i,j), column i along x, row j along y

// Set of grid cells, kept sorted row-major ((j,i) ascending) so iteration
// order is deterministic everywhere.
struct Polyomino {
    GridSpec grid;
    std::vector<PixelCoord> pixels;

    bool contains(int i, int j) const;
    std::size_t size() const { return pixels.size(); }
};

// Boundary-inclusive point-in-polygon test. Points within `tol` of any ring
// are counted as inside; points strictly inside a hole are outside.
bool contains_point(const Polygon& poly, Point p, double tol = 1e-9);

// True iff the open cell interior overlaps the polygon with positive area
// (intersection area above 1e-12). Exact up to clipping arithmetic.
bool pixel_intersects(const Polygon& poly, const GridSpec& g, int i, int j);

// Area of the intersection between the polygon and the cell rectangle.
double pixel_overlap_area(const Polygon& poly, const GridSpec& g, int i, int j);

// Pick grid offsets minimizing the number of covering pixels for the given
// cell size. Candidate offsets are the vertex coordinates mod cell_size
// (plus (0,0)), deduplicated; ties break lexicographically on (ox, oy).
GridSpec choose_grid(const Polygon& poly, double cell_size);

// All cells whose open interior meets the polygon. Throws errc::disconnected
// if the resulting pixel set is not 4-connected.
Polyomino rasterize(const Polygon& poly, const GridSpec& g);

// Exact boundary polygon of a polyomino (unit steps along cell edges,
// collinear runs merged). Outer ring counterclockwise, holes clockwise.
Polygon boundary_polygon(const Polyomino& pm);

// Convex hull area of the outer ring (for the relative-area instance metric).
double convex_hull_area(const Polygon& poly);

bool pixels_connected(const std::vector<PixelCoord>& pixels);

} // namespace mow
