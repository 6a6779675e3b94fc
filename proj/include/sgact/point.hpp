#pragma once

#include <array>
#include <cmath>

namespace sgact {

// Distance under which a coordinate is snapped to the lower seam, so the
// fixed point at 1.0 and the one at 0.0 never show up twice.
inline constexpr double kSeamTolerance = 1e-12;

/// Reduce a coordinate to the fundamental domain [0, 1).
inline double reduce_mod1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0 || 1.0 - r < kSeamTolerance) r = 0.0;
    return r;
}

/// Point on the circle (dim = 1) or torus (dim <= 3), coordinates in [0, 1).
struct Point {
    int dim = 1;
    std::array<double, 3> x{};

    static Point circle(double v) {
        Point p;
        p.dim = 1;
        p.x[0] = reduce_mod1(v);
        return p;
    }
};

/// Distance on the circle, accounting for wrap-around.
inline double circle_distance(double a, double b) {
    double d = std::fabs(reduce_mod1(a) - reduce_mod1(b));
    return d > 0.5 ? 1.0 - d : d;
}

inline double torus_distance(const Point& a, const Point& b) {
    double m = 0.0;
    for (int i = 0; i < a.dim; ++i)
        m = std::max(m, circle_distance(a.x[i], b.x[i]));
    return m;
}

} // namespace sgact
