#pragma once

#include <cmath>

namespace fdspc {

/// A point in 2.5-D space: planar position plus height above the flat datum.
struct Point25 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Normalize an angle to (-pi, pi].
inline double wrap_pi(double a) {
    constexpr double kPi = 3.14159265358979323846;
    double r = std::fmod(a + kPi, 2.0 * kPi);
    if (r <= 0.0) r += 2.0 * kPi;
    return r - kPi;
}

inline double planar_distance(const Point25& a, const Point25& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline double distance(const Point25& a, const Point25& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace fdspc
