#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "birk/precision.hpp"

namespace birk {

template <class R>
struct Vec2 {
    R x{}, y{};
};

template <class R>
Vec2<R> operator-(const Vec2<R>& a, const Vec2<R>& b) {
    return {a.x - b.x, a.y - b.y};
}

template <class R>
Vec2<R> operator+(const Vec2<R>& a, const Vec2<R>& b) {
    return {a.x + b.x, a.y + b.y};
}

template <class R>
R norm(const Vec2<R>& v) {
    using std::sqrt;
    return sqrt(v.x * v.x + v.y * v.y);
}

/// Where a trajectory came from; echoed into exported file headers.
struct TrajectoryMeta {
    std::string system;      // "fish", "flower", "standard-map", "three-body", "csv", ...
    std::string parameters;  // human-readable parameter string
    std::size_t n = 0;
    PrecisionMode mode = PrecisionMode::fast;
};

/// An ordered sequence of planar points x_n plus provenance.
template <class R>
struct Trajectory {
    std::vector<Vec2<R>> pts;
    TrajectoryMeta meta;

    std::size_t size() const { return pts.size(); }
    const Vec2<R>& operator[](std::size_t i) const { return pts[i]; }
};

/// Re-reduce torus coordinates into a window of width `period` centered on
/// the circular mean of each coordinate. An invariant circle that straddles
/// the mod-period seam becomes a connected planar curve; the curve must have
/// diameter < period for this to be faithful.
template <class R>
Trajectory<R> unwrap_torus(const Trajectory<R>& t, R period) {
    using std::atan2;
    using std::floor;
    if (t.size() == 0) return t;
    R sx = R(0), cx = R(0), sy = R(0), cy = R(0);
    for (const auto& p : t.pts) {
        sx += sin_turns(p.x / period);
        cx += cos_turns(p.x / period);
        sy += sin_turns(p.y / period);
        cy += cos_turns(p.y / period);
    }
    R mx = angle_turns(sx, cx) * period;
    R my = angle_turns(sy, cy) * period;
    Trajectory<R> out;
    out.meta = t.meta;
    out.pts.reserve(t.size());
    for (const auto& p : t.pts) {
        R x = p.x - period * floor((p.x - mx) / period + R(0.5));
        R y = p.y - period * floor((p.y - my) / period + R(0.5));
        out.pts.push_back({x, y});
    }
    return out;
}

} // namespace birk
