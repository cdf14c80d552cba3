#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "birk/average.hpp"
#include "birk/errors.hpp"
#include "birk/io.hpp"
#include "birk/standard_map.hpp"

namespace birk {

/// zeros_N = -log10 |Delta_N|, Delta_N = WB over the first window minus WB
/// over the second. Large values mean the two window averages agree to many
/// digits, the signature of quasiperiodicity. Values cap at the mode's
/// significant digit count.
template <class R>
struct ZerosResult {
    R zeros{};
    R delta{};
    bool capped = false;
};

template <class R>
ZerosResult<R> zeros_n(std::span<const R> orbit_values, const WeightScheme<R>& scheme) {
    using std::abs;
    using std::log10;
    const std::size_t n = scheme.size();
    if (orbit_values.size() != 2 * n)
        throw contract_error("zeros needs 2N observable values");
    R w1 = weighted_birkhoff<R, R>(orbit_values.subspan(0, n), scheme);
    R w2 = weighted_birkhoff<R, R>(orbit_values.subspan(n, n), scheme);
    ZerosResult<R> out;
    out.delta = w1 - w2;
    const R cap = R(precision_traits<R>::significant_digits);
    if (out.delta == R(0)) {
        out.zeros = cap;
        out.capped = true;
        return out;
    }
    out.zeros = -log10(abs(out.delta));
    if (out.zeros > cap) {
        out.zeros = cap;
        out.capped = true;
    }
    return out;
}

/// Observables on the torus, selected by tag. sin_xy is the grid-scan
/// default; the embed3 axes default to (sin_xy, cos_x, sin_y).
template <class R>
std::function<R(const Vec2<R>&)> observable(std::string_view id) {
    using std::cos;
    using std::sin;
    if (id == "sin_xy") return [](const Vec2<R>& s) { return sin(s.x + s.y); };
    if (id == "cos_xy") return [](const Vec2<R>& s) { return cos(s.x + s.y); };
    if (id == "sin_x") return [](const Vec2<R>& s) { return sin(s.x); };
    if (id == "cos_x") return [](const Vec2<R>& s) { return cos(s.x); };
    if (id == "sin_y") return [](const Vec2<R>& s) { return sin(s.y); };
    if (id == "cos_y") return [](const Vec2<R>& s) { return cos(s.y); };
    throw contract_error("unknown observable: " + std::string(id));
}

/// zeros of one standard-map orbit, streaming the 2N iterates.
template <class R>
ZerosResult<R> zeros_of_orbit(const StandardMap<R>& map, Vec2<R> seed,
                              const std::function<R(const Vec2<R>&)>& f,
                              const WeightScheme<R>& scheme) {
    const std::size_t n = scheme.size();
    Kahan<R> w1, w2;
    Vec2<R> s{StandardMap<R>::reduce(seed.x), StandardMap<R>::reduce(seed.y)};
    for (std::size_t i = 0; i < 2 * n; ++i) {
        R v = f(s);
        if (i < n)
            w1.add(v * scheme.at(i));
        else
            w2.add(v * scheme.at(i - n));
        s = map.step(s);
    }
    using std::abs;
    using std::log10;
    ZerosResult<R> out;
    out.delta = w1.value() - w2.value();
    const R cap = R(precision_traits<R>::significant_digits);
    if (out.delta == R(0)) {
        out.zeros = cap;
        out.capped = true;
        return out;
    }
    out.zeros = -log10(abs(out.delta));
    if (out.zeros > cap) {
        out.zeros = cap;
        out.capped = true;
    }
    return out;
}

struct GridRegion {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
};

/// zeros values over a grid of initial conditions. Row-major with ix fastest;
/// cell (ix, iy) is seeded at the cell center
/// (x0 + (ix+0.5) dx, y0 + (iy+0.5) dy). Cells are independent work items and
/// each writes only its own slot, so the result is identical for any thread
/// count.
struct ClassificationGrid {
    GridRegion region;
    int nx = 0, ny = 0;
    std::size_t n = 0;
    std::string f_id;
    double r = 0;
    std::vector<double> values;

    double at(int ix, int iy) const { return values[std::size_t(iy) * nx + ix]; }
};

template <class R>
ClassificationGrid classify_grid(const GridRegion& region, int nx, int ny,
                                 std::size_t n, std::string_view f_id, R r,
                                 const WeightScheme<R>& scheme) {
    if (nx < 2 || ny < 2) throw contract_error("grid resolution must be >= 2x2");
    if (scheme.size() != n) throw contract_error("weight window length mismatch");
    ClassificationGrid g;
    g.region = region;
    g.nx = nx;
    g.ny = ny;
    g.n = n;
    g.f_id = std::string(f_id);
    g.r = static_cast<double>(r);
    g.values.assign(std::size_t(nx) * ny, 0.0);

    StandardMap<R> map(r);
    auto f = observable<R>(f_id);
    const double dx = (region.x1 - region.x0) / nx;
    const double dy = (region.y1 - region.y0) / ny;
#pragma omp parallel for schedule(dynamic, 1)
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            Vec2<R> seed{R(region.x0 + (ix + 0.5) * dx), R(region.y0 + (iy + 0.5) * dy)};
            auto z = zeros_of_orbit(map, seed, f, scheme);
            g.values[std::size_t(iy) * nx + ix] = static_cast<double>(z.zeros);
        }
    }
    return g;
}

/// (WB(f1), WB(f2), WB(f3)) per seed: all points of one quasiperiodic orbit
/// land on the same triple, chaotic seeds scatter.
template <class R>
std::vector<std::array<R, 3>> embed3(const std::vector<Vec2<R>>& seeds,
                                     std::string_view f1, std::string_view f2,
                                     std::string_view f3, std::size_t n, R r,
                                     const WeightScheme<R>& scheme) {
    StandardMap<R> map(r);
    auto g1 = observable<R>(f1);
    auto g2 = observable<R>(f2);
    auto g3 = observable<R>(f3);
    std::vector<std::array<R, 3>> out(seeds.size());
    if (n == 1) {
        // degenerate window: the triple is just the observables at the seed
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            Vec2<R> s{StandardMap<R>::reduce(seeds[i].x), StandardMap<R>::reduce(seeds[i].y)};
            out[i] = {g1(s), g2(s), g3(s)};
        }
        return out;
    }
    if (scheme.size() != n) throw contract_error("weight window length mismatch");
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(seeds.size()); ++i) {
        Vec2<R> s{StandardMap<R>::reduce(seeds[i].x), StandardMap<R>::reduce(seeds[i].y)};
        Kahan<R> a1, a2, a3;
        for (std::size_t m = 0; m < n; ++m) {
            a1.add(g1(s) * scheme.at(m));
            a2.add(g2(s) * scheme.at(m));
            a3.add(g3(s) * scheme.at(m));
            s = map.step(s);
        }
        out[static_cast<std::size_t>(i)] = {a1.value(), a2.value(), a3.value()};
    }
    return out;
}

/// Largest Lyapunov exponent along one orbit: iterate a unit tangent vector
/// through the map jacobian with per-step renormalization and average the
/// log stretch, weighted or uniformly. The initial tangent (1, 0) is the
/// invariant direction of the r = 0 shear, for which the exponent is then
/// exactly zero.
template <class R>
R lyapunov(Vec2<R> seed, R r, std::size_t n, const WeightScheme<R>& scheme,
           bool weighted) {
    using std::log;
    using std::sqrt;
    if (n < 10) throw contract_error("lyapunov needs N >= 10");
    if (weighted && scheme.size() != n)
        throw contract_error("weight window length mismatch");
    StandardMap<R> map(r);
    Vec2<R> s{StandardMap<R>::reduce(seed.x), StandardMap<R>::reduce(seed.y)};
    R vx = R(1), vy = R(0);
    Kahan<R> acc;
    for (std::size_t i = 0; i < n; ++i) {
        auto j = map.jacobian(s);
        R ux = j[0][0] * vx + j[0][1] * vy;
        R uy = j[1][0] * vx + j[1][1] * vy;
        R growth = sqrt(ux * ux + uy * uy);
        R term = log(growth);
        acc.add(weighted ? term * scheme.at(i)
                         : term / R(static_cast<long long>(n)));
        vx = ux / growth;
        vy = uy / growth;
        s = map.step(s);
    }
    return acc.value();
}

/// CSV export: x, y, zeros with one row per cell, ix fastest.
void write_grid_csv(const ClassificationGrid& g, const std::string& path,
                    const std::vector<std::string>& header);

/// PGM export: low zeros map to dark pixels, the mode cap to white. Image
/// row 0 is the top of the region (largest y).
void write_grid_pgm(const ClassificationGrid& g, const std::string& path, double cap);

} // namespace birk
