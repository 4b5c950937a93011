#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace perc {

// Parameter/precondition violations across all modules.
class parameter_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dist2_sq(Vec2 a, Vec2 b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double norm2(Vec2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }

inline double norm_inf(Vec2 a) { return std::max(std::abs(a.x), std::abs(a.y)); }

// Axis-aligned square window: side 2*half_width around center.
struct Window {
    Vec2 center{0.0, 0.0};
    double half_width = 0.0;

    Window() = default;
    Window(Vec2 c, double hw) : center(c), half_width(hw) {
        if (!(hw > 0.0)) throw parameter_error("window half_width must be > 0");
    }
    explicit Window(double hw) : Window(Vec2{0.0, 0.0}, hw) {}

    double area() const { return 4.0 * half_width * half_width; }

    bool contains(Vec2 p) const {
        return std::abs(p.x - center.x) <= half_width &&
               std::abs(p.y - center.y) <= half_width;
    }

    bool centered_at_origin() const { return center.x == 0.0 && center.y == 0.0; }

    // Distance from the origin to the farthest corner.
    double circumradius_about_origin() const {
        double cx = std::abs(center.x) + half_width;
        double cy = std::abs(center.y) + half_width;
        return std::hypot(cx, cy);
    }
};

// Euclidean distance from p to the square shell W_R = { ||x||_inf = R }
// (boundary of the box [-R,R]^2). From inside the box the nearest shell
// point lies along the largest coordinate; from outside it may be a corner.
inline double dist_to_box_shell(Vec2 p, double R) {
    double ax = std::abs(p.x), ay = std::abs(p.y);
    if (ax <= R && ay <= R) return R - std::max(ax, ay);
    double dx = std::max(0.0, ax - R);
    double dy = std::max(0.0, ay - R);
    return std::hypot(dx, dy);
}

} // namespace perc
