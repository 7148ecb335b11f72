#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sirmeta {

inline constexpr double pi = std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double norm2(Vec2 v) { return v.x * v.x + v.y * v.y; }

// Square observation window [-L, L]^2 centred on the origin.
struct Window {
    double half_extent = 0.0;

    explicit Window(double L) : half_extent(L) {
        if (!(L > 0.0)) throw std::invalid_argument("Window: half_extent must be > 0");
    }
    double area() const { return 4.0 * half_extent * half_extent; }
    bool contains(Vec2 p) const {
        return std::abs(p.x) <= half_extent && std::abs(p.y) <= half_extent;
    }
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) {
    if (!(v > 0.0)) throw std::domain_error("linear_to_db: value must be > 0");
    return 10.0 * std::log10(v);
}

} // namespace sirmeta
