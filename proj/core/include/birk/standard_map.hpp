#pragma once

#include <array>
#include <cstddef>

#include "birk/trajectory.hpp"

namespace birk {

/// The area-preserving map (x, y) -> (x + y, y + r sin(x + y)) mod 2*pi
/// on the torus [0, 2*pi)^2.
template <class R>
class StandardMap {
public:
    explicit StandardMap(R r) : r_(r) {}

    R r() const { return r_; }

    static R reduce(R a) {
        using std::floor;
        const R tp = two_pi_v<R>();
        a -= tp * floor(a / tp);
        if (a >= tp) a -= tp;
        if (a < R(0)) a += tp;
        return a;
    }

    Vec2<R> step(const Vec2<R>& s) const {
        using std::sin;
        R xy = s.x + s.y;
        R xn = reduce(xy);
        R yn = reduce(s.y + r_ * sin(xy));
        return {xn, yn};
    }

    /// d(step)/d(x,y) = [[1, 1], [r cos(x+y), 1 + r cos(x+y)]]; det = 1.
    std::array<std::array<R, 2>, 2> jacobian(const Vec2<R>& s) const {
        using std::cos;
        R c = r_ * cos(s.x + s.y);
        return {{{R(1), R(1)}, {c, R(1) + c}}};
    }

    Trajectory<R> orbit(const Vec2<R>& seed, std::size_t n) const {
        Trajectory<R> t;
        t.pts.reserve(n);
        Vec2<R> s{reduce(seed.x), reduce(seed.y)};
        for (std::size_t i = 0; i < n; ++i) {
            t.pts.push_back(s);
            s = step(s);
        }
        t.meta.system = "standard-map";
        t.meta.n = n;
        t.meta.mode = precision_traits<R>::mode;
        return t;
    }

private:
    R r_;
};

} // namespace birk
