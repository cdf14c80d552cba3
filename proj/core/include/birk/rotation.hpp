#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "birk/average.hpp"
#include "birk/errors.hpp"
#include "birk/trajectory.hpp"
#include "birk/weights.hpp"

namespace birk {

/// Angles phi_n in [0,1) of the trajectory about a base point P.
template <class R>
struct AngleSeries {
    std::vector<R> phi;
    Vec2<R> base;
};

template <class R>
AngleSeries<R> angle_about(const Trajectory<R>& traj, const Vec2<R>& base) {
    using std::abs;
    using std::max;
    using std::min;
    if (traj.size() == 0) throw contract_error("empty trajectory");
    R xmin = traj[0].x, xmax = xmin, ymin = traj[0].y, ymax = ymin;
    for (const auto& p : traj.pts) {
        xmin = min(xmin, p.x);
        xmax = max(xmax, p.x);
        ymin = min(ymin, p.y);
        ymax = max(ymax, p.y);
    }
    R scale = norm(Vec2<R>{xmax - xmin, ymax - ymin});
    AngleSeries<R> out;
    out.base = base;
    out.phi.reserve(traj.size());
    for (const auto& p : traj.pts) {
        Vec2<R> d = p - base;
        if (norm(d) <= R(1e-15) * scale)
            throw degenerate_base_point("trajectory passes through the base point");
        out.phi.push_back(angle_turns(d.y, d.x));
    }
    return out;
}

/// Delta_n = (phi_{n+1} - phi_n) mod 1, length N-1.
template <class R>
std::vector<R> raw_increments(const AngleSeries<R>& a) {
    if (a.phi.size() < 2) throw contract_error("angle series too short");
    std::vector<R> d(a.phi.size() - 1);
    for (std::size_t n = 0; n + 1 < a.phi.size(); ++n)
        d[n] = frac(a.phi[n + 1] - a.phi[n]);
    return d;
}

/// Delay embedding Gamma_n = (x_n, x_{n+1}, ..., x_{n+K-1}) in R^{2K},
/// n = 0..N-K. Coordinates are kept in double: they only steer which points
/// are treated as neighbors, never enter the averaged values.
struct DelayEmbedding {
    int k = 0;
    std::size_t count = 0;
    std::vector<double> coords;  // row-major, 2k per point

    double dist2(std::size_t a, std::size_t b) const {
        const double* pa = coords.data() + 2 * static_cast<std::size_t>(k) * a;
        const double* pb = coords.data() + 2 * static_cast<std::size_t>(k) * b;
        double s = 0;
        for (int i = 0; i < 2 * k; ++i) {
            double d = pa[i] - pb[i];
            s += d * d;
        }
        return s;
    }
};

template <class R>
DelayEmbedding delay_embed(const Trajectory<R>& traj, int k) {
    if (k < 2) throw contract_error("embedding needs K >= 2");
    if (traj.size() <= static_cast<std::size_t>(k))
        throw contract_error("embedding needs more points than K");
    DelayEmbedding e;
    e.k = k;
    e.count = traj.size() - static_cast<std::size_t>(k) + 1;
    e.coords.resize(e.count * 2 * static_cast<std::size_t>(k));
    for (std::size_t n = 0; n < e.count; ++n)
        for (int j = 0; j < k; ++j) {
            e.coords[2 * static_cast<std::size_t>(k) * n + 2 * j] =
                static_cast<double>(traj[n + j].x);
            e.coords[2 * static_cast<std::size_t>(k) * n + 2 * j + 1] =
                static_cast<double>(traj[n + j].y);
        }
    return e;
}

/// The lifted increments Delta*_n = Delta_n + k_n produced by continuation,
/// with the branch integers and the largest branch-selection residual seen.
template <class R>
struct LiftedAngleSeries {
    std::vector<R> delta_star;
    std::vector<long long> k;
    R max_residual{};
};

namespace detail {

/// Index offsets |n - m| at which nearest neighbors occur. For a
/// quasiperiodic sequence these concentrate on a handful of values (the
/// three-distance structure of frac(n rho)), so the nearest-neighbor graph
/// restricted to these offsets carries the continuation.
inline std::vector<std::size_t> neighbor_offsets(const DelayEmbedding& e) {
    const std::size_t m = e.count;
    std::vector<std::size_t> offsets{1};
    if (m < 3) return offsets;
    const std::size_t samples = std::min<std::size_t>(m, 256);
    std::vector<std::pair<std::size_t, std::size_t>> hits;  // (offset, count)
    std::vector<std::size_t> found;
    for (std::size_t s = 0; s < samples; ++s) {
        std::size_t a = (s * m) / samples;
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = a;
        for (std::size_t b = 0; b < m; ++b) {
            if (b == a) continue;
            double d = e.dist2(a, b);
            if (d < best) {
                best = d;
                arg = b;
            }
        }
        found.push_back(a > arg ? a - arg : arg - a);
    }
    std::sort(found.begin(), found.end());
    for (std::size_t i = 0; i < found.size();) {
        std::size_t j = i;
        while (j < found.size() && found[j] == found[i]) ++j;
        offsets.push_back(found[i]);
        i = j;
    }
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    if (offsets.size() > 48) offsets.resize(48);
    return offsets;
}

} // namespace detail

/// Grow the lift over the embedded curve: start from index 0, repeatedly take
/// the globally closest (defined, undefined) neighbor pair, and copy the
/// branch across that edge. A residual >= 0.25 means the curve is not sampled
/// densely enough (or is not a quasiperiodic circle) and aborts the run.
template <class R>
LiftedAngleSeries<R> continue_lift(std::span<const R> deltas, const DelayEmbedding& emb) {
    using std::abs;
    const std::size_t m = emb.count;
    if (deltas.size() < m)
        throw contract_error("fewer increments than embedded points");
    LiftedAngleSeries<R> out;
    out.delta_star.assign(m, R(0));
    out.k.assign(m, 0);
    out.max_residual = R(0);
    if (m == 0) return out;

    const auto offsets = detail::neighbor_offsets(emb);
    std::vector<char> defined(m, 0);

    struct Edge {
        double d;
        std::size_t to, from;
        bool operator>(const Edge& o) const {
            if (d != o.d) return d > o.d;
            if (to != o.to) return to > o.to;
            return from > o.from;
        }
    };
    std::priority_queue<Edge, std::vector<Edge>, std::greater<Edge>> pq;

    auto nearest_undefined = [&](std::size_t v) -> std::optional<Edge> {
        std::optional<Edge> best;
        for (std::size_t off : offsets) {
            for (int sgn = 0; sgn < 2; ++sgn) {
                if (sgn == 0 && off > v) continue;
                std::size_t u = sgn == 0 ? v - off : v + off;
                if (u >= m || defined[u]) continue;
                double d = emb.dist2(v, u);
                if (!best || d < best->d || (d == best->d && u < best->to))
                    best = Edge{d, u, v};
            }
        }
        return best;
    };

    auto define = [&](std::size_t v, std::size_t from) {
        long long kk = round_to_ll(out.delta_star[from] - deltas[v]);
        out.k[v] = kk;
        out.delta_star[v] = deltas[v] + R(kk);
        R resid = abs(out.delta_star[v] - out.delta_star[from]);
        if (resid > out.max_residual) out.max_residual = resid;
        if (resid >= R(0.25))
            throw continuation_gap(
                "branch residual reached 0.25; trajectory too short or not "
                "quasiperiodic");
        defined[v] = 1;
    };

    defined[0] = 1;
    out.delta_star[0] = deltas[0];
    std::size_t have = 1;
    if (auto e = nearest_undefined(0)) pq.push(*e);

    while (have < m) {
        if (pq.empty())
            throw continuation_gap("continuation frontier exhausted");
        Edge e = pq.top();
        pq.pop();
        if (defined[e.to]) {
            // stale entry: its source may still have other undefined neighbors
            if (auto n = nearest_undefined(e.from)) pq.push(*n);
            continue;
        }
        define(e.to, e.from);
        ++have;
        if (auto n = nearest_undefined(e.from)) pq.push(*n);
        if (auto n = nearest_undefined(e.to)) pq.push(*n);
    }
    return out;
}

namespace detail {

template <class R>
struct PolygonStats {
    R total{};      // cyclic sum of branch-nearest increments (an integer up
                    // to roundoff, for any ordering)
    R mean_abs{};   // mean |increment|: ~|W|/N in curve order, O(1) otherwise
    R max_abs{};
};

template <class R>
PolygonStats<R> polygon_stats(const std::vector<R>& phi, R rho_est) {
    using std::abs;
    using std::max;
    const std::size_t n = phi.size();
    if (n < 3) throw contract_error("winding needs at least 3 points");
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    const double rho_d = static_cast<double>(rho_est);
    std::vector<double> key(n);
    for (std::size_t i = 0; i < n; ++i)
        key[i] = frac(static_cast<double>(i) * rho_d);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (key[a] != key[b]) return key[a] < key[b];
        return a < b;
    });
    PolygonStats<R> s;
    Kahan<R> acc, mag;
    for (std::size_t i = 0; i < n; ++i) {
        R d = phi[idx[(i + 1) % n]] - phi[idx[i]];
        d -= R(round_to_ll(d));
        acc.add(d);
        mag.add(abs(d));
        s.max_abs = max(s.max_abs, abs(d));
    }
    s.total = acc.value();
    s.mean_abs = mag.value() / R(static_cast<long long>(n));
    return s;
}

/// Curve-order plausibility: increments must be individually small and sum
/// |W| per point on average. Scrambled orderings still sum to an integer but
/// carry O(1) increments.
template <class R>
bool order_is_smooth(const PolygonStats<R>& s, long w, std::size_t n) {
    if (w == 0) return s.max_abs <= R(0.45);
    R bound = R(20) * R(static_cast<long long>(w < 0 ? -w : w)) /
              R(static_cast<long long>(n));
    return s.mean_abs <= bound && s.max_abs <= R(0.1);
}

} // namespace detail

/// Winding number of the trajectory's angle series about P: sort into curve
/// order with the rotation estimate, then sum branch-nearest increments
/// around the closed polygon. Requires rho_est accurate enough to order the
/// points (the weighted lift mean is; a 1e-3 estimate is only enough for
/// short series).
template <class R>
long winding_number_of_angles(const std::vector<R>& phi, R rho_est) {
    using std::abs;
    auto s = detail::polygon_stats(phi, rho_est);
    long long w = round_to_ll(s.total);
    if (abs(s.total - R(w)) > R(0.1))
        throw inconsistent_ordering("polygon winding is not close to an integer");
    if (!detail::order_is_smooth(s, static_cast<long>(w), phi.size()))
        throw inconsistent_ordering("ordering does not traverse the curve smoothly");
    return static_cast<long>(w);
}

template <class R>
long winding_number(const Trajectory<R>& traj, const Vec2<R>& base, R rho_est) {
    auto ang = angle_about(traj, base);
    return winding_number_of_angles(ang.phi, rho_est);
}

template <class R>
struct WindingResolution {
    long winding = 0;
    R rho_coarse{};
};

namespace detail {

/// The lift mean approaches W(P) * rho - k*. For each winding hypothesis j
/// the candidates (mean + i) / j, i = 0..j-1, include the true rho mod 1;
/// only that one sorts the points into curve order, recognized by its small
/// increments. Every candidate's polygon sums to an integer, so the sum
/// alone cannot decide.
template <class R>
WindingResolution<R> resolve_winding(const std::vector<R>& phi, R lift_mean,
                                     int max_winding = 12) {
    std::optional<WindingResolution<R>> best;
    R best_mean_abs{};
    for (int wc = 1; wc <= max_winding; ++wc) {
        for (int i = 0; i < wc; ++i) {
            R rho_c = frac((lift_mean + R(i)) / R(wc));
            auto s = polygon_stats(phi, rho_c);
            using std::abs;
            long long w = round_to_ll(s.total);
            if (abs(s.total - R(w)) > R(0.1)) continue;
            if (w != wc && w != -wc) continue;
            if (!order_is_smooth(s, static_cast<long>(w), phi.size())) continue;
            if (!best || s.mean_abs < best_mean_abs) {
                best = WindingResolution<R>{static_cast<long>(w), rho_c};
                best_mean_abs = s.mean_abs;
            }
        }
        // the common case |W| = 1 cannot be shadowed by impostors: accept it
        // without scanning higher windings
        if (wc == 1 && best) return *best;
    }
    if (best) return *best;
    // no wrap at all: a point outside the curve sees a limited angle range,
    // so increments are branch-free and the sum telescopes to zero
    auto s0 = polygon_stats(phi, frac(lift_mean));
    using std::abs;
    if (abs(s0.total) <= R(0.1) && s0.max_abs <= R(0.45))
        return {0, frac(lift_mean)};
    throw inconsistent_ordering("winding could not be resolved from the lift mean");
}

} // namespace detail

template <class R>
struct RotationResult {
    R rho{};             // frac(WB of the lifted increments); class {rho, 1-rho}
    long winding = 0;
    int k = 0;
    std::size_t n = 0;
    R max_residual{};
    R fluctuation{};     // circle distance |rho_N - rho_{N/2}|
};

/// Distance on the circle R/Z.
template <class R>
R circle_distance(R a, R b) {
    R d = frac(a - b);
    return d <= R(0.5) ? d : R(1) - d;
}

/// Rotation number of a planar quasiperiodic trajectory from data alone.
/// The sign of rho is not observable; the result is the class {rho, 1-rho}.
/// Throws invalid_base_point unless |W(P)| = 1.
template <class R>
RotationResult<R> rotation_number(const Trajectory<R>& traj, const Vec2<R>& base,
                                  int k, std::size_t n, const WeightScheme<R>& scheme) {
    if (n > traj.size()) throw contract_error("N exceeds trajectory length");
    Trajectory<R> head;
    head.meta = traj.meta;
    head.pts.assign(traj.pts.begin(), traj.pts.begin() + static_cast<std::ptrdiff_t>(n));

    auto ang = angle_about(head, base);
    auto deltas = raw_increments(ang);
    auto emb = delay_embed(head, k);
    auto lift = continue_lift(std::span<const R>(deltas.data(), deltas.size()), emb);

    const std::size_t m = emb.count;
    if (scheme.size() != m)
        throw contract_error("weight window must have length N - K + 1");

    // the weighted mean is the lift's limit W(P) rho - k* to full accuracy;
    // the uniform mean (error ~1/N) cannot order 10^4+ points reliably
    R wb = weighted_birkhoff(lift.delta_star, scheme);
    auto res = detail::resolve_winding(ang.phi, wb);
    if (res.winding != 1 && res.winding != -1)
        throw invalid_base_point(
            "base point has |W| = " + std::to_string(res.winding < 0 ? -res.winding
                                                                     : res.winding) +
                "; the method needs |W| = 1",
            res.winding);

    R rho = frac(wb);

    const std::size_t m2 = m / 2;
    auto scheme2 = WeightScheme<R>::make(m2, scheme.exponent());
    std::vector<R> firsthalf(lift.delta_star.begin(),
                             lift.delta_star.begin() + static_cast<std::ptrdiff_t>(m2));
    R rho2 = frac(weighted_birkhoff(firsthalf, scheme2));

    RotationResult<R> out;
    out.rho = rho;
    out.winding = res.winding;
    out.k = k;
    out.n = n;
    out.max_residual = lift.max_residual;
    out.fluctuation = circle_distance(rho, rho2);
    return out;
}

} // namespace birk
