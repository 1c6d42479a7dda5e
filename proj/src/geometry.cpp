#include "trackrepair/geometry.hpp"

#include <algorithm>
#include <limits>

namespace trackrepair {

namespace {

double cross(const GroundPoint& o, const GroundPoint& a, const GroundPoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool onSegment(const GroundPoint& a, const GroundPoint& b, const GroundPoint& p) {
    const double scale = std::max({std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y), 1.0});
    if (std::abs(cross(a, b, p)) > 1e-12 * scale * scale) {
        return false;
    }
    return p.x >= std::min(a.x, b.x) - 1e-12 * scale && p.x <= std::max(a.x, b.x) + 1e-12 * scale &&
           p.y >= std::min(a.y, b.y) - 1e-12 * scale && p.y <= std::max(a.y, b.y) + 1e-12 * scale;
}

// Proper or improper intersection of segments ab and cd, excluding shared endpoints.
bool segmentsIntersect(const GroundPoint& a, const GroundPoint& b,
                       const GroundPoint& c, const GroundPoint& d) {
    const double d1 = cross(c, d, a);
    const double d2 = cross(c, d, b);
    const double d3 = cross(a, b, c);
    const double d4 = cross(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    if (d1 == 0 && onSegment(c, d, a)) return true;
    if (d2 == 0 && onSegment(c, d, b)) return true;
    if (d3 == 0 && onSegment(a, b, c)) return true;
    if (d4 == 0 && onSegment(a, b, d)) return true;
    return false;
}

}  // namespace

double signedArea(const Outline& outline) {
    double sum = 0.0;
    const std::size_t n = outline.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = outline[i];
        const auto& q = outline[(i + 1) % n];
        sum += p.x * q.y - q.x * p.y;
    }
    return 0.5 * sum;
}

bool isSimplePolygon(const Outline& outline) {
    const std::size_t n = outline.size();
    if (n < 3) {
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = outline[i];
        const auto& b = outline[(i + 1) % n];
        if (a.x == b.x && a.y == b.y) {
            return false;  // zero-length edge
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                continue;
            }
            if (segmentsIntersect(a, b, outline[j], outline[(j + 1) % n])) {
                return false;
            }
        }
    }
    return true;
}

void validateOutline(const Outline& outline) {
    if (outline.size() < 3) {
        throw GeometryError("zone outline needs at least 3 points, got " +
                            std::to_string(outline.size()));
    }
    for (const auto& p : outline) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
            throw GeometryError("zone outline contains a non-finite coordinate");
        }
    }
    if (!isSimplePolygon(outline)) {
        throw GeometryError("zone outline is self-intersecting or degenerate");
    }
    if (std::abs(signedArea(outline)) <= 0.0) {
        throw GeometryError("zone outline has zero area");
    }
}

bool outlineContains(const Outline& outline, const GroundPoint& p) {
    const std::size_t n = outline.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (onSegment(outline[i], outline[(i + 1) % n], p)) {
            return true;
        }
    }
    // Crossing-number test, half-open on the vertical axis so vertices are not
    // counted twice.
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = outline[i];
        const auto& b = outline[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xCross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xCross) {
                inside = !inside;
            }
        }
    }
    return inside;
}

Rect Rect::boundingBox(const std::vector<GroundPoint>& points) {
    if (points.empty()) {
        throw GeometryError("bounding box of an empty point set");
    }
    Rect r{points[0].x, points[0].y, points[0].x, points[0].y};
    for (const auto& p : points) {
        r.minX = std::min(r.minX, p.x);
        r.minY = std::min(r.minY, p.y);
        r.maxX = std::max(r.maxX, p.x);
        r.maxY = std::max(r.maxY, p.y);
    }
    return r;
}

double intersectionArea(const Rect& a, const Rect& b) {
    const double w = std::min(a.maxX, b.maxX) - std::max(a.minX, b.minX);
    const double h = std::min(a.maxY, b.maxY) - std::max(a.minY, b.minY);
    if (w <= 0.0 || h <= 0.0) {
        return 0.0;
    }
    return w * h;
}

Rect boundingUnion(const Rect& a, const Rect& b) {
    return Rect{std::min(a.minX, b.minX), std::min(a.minY, b.minY),
                std::max(a.maxX, b.maxX), std::max(a.maxY, b.maxY)};
}

}  // namespace trackrepair
