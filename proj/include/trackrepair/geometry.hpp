#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace trackrepair {

// Point on the ground plane. z is carried through I/O but all geometry is 2D.
struct GroundPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const GroundPoint& a, const GroundPoint& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

inline double distance2d(const GroundPoint& a, const GroundPoint& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Outline = std::vector<GroundPoint>;

// Signed area via the shoelace formula (positive for counter-clockwise outlines).
double signedArea(const Outline& outline);

// True if no two non-adjacent edges intersect and no edge has zero length.
bool isSimplePolygon(const Outline& outline);

// Throws GeometryError unless the outline is a simple polygon with ≥3 vertices
// and nonzero area.
void validateOutline(const Outline& outline);

// Even-odd containment test; points on the boundary count as inside.
bool outlineContains(const Outline& outline, const GroundPoint& p);

// Axis-aligned rectangle, used for learned zone outlines and occluders.
struct Rect {
    double minX = 0.0;
    double minY = 0.0;
    double maxX = 0.0;
    double maxY = 0.0;

    double width() const { return maxX - minX; }
    double height() const { return maxY - minY; }
    double area() const { return width() * height(); }

    bool contains(const GroundPoint& p) const {
        return p.x >= minX && p.x <= maxX && p.y >= minY && p.y <= maxY;
    }

    Outline toOutline() const {
        return {{minX, minY, 0.0}, {maxX, minY, 0.0}, {maxX, maxY, 0.0}, {minX, maxY, 0.0}};
    }

    static Rect boundingBox(const std::vector<GroundPoint>& points);
};

// Intersection area of two axis-aligned rectangles (0 when disjoint).
double intersectionArea(const Rect& a, const Rect& b);

// Smallest rectangle covering both inputs.
Rect boundingUnion(const Rect& a, const Rect& b);

}  // namespace trackrepair
