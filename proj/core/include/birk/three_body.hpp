#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "birk/errors.hpp"
#include "birk/integrator8.hpp"
#include "birk/precision.hpp"

namespace birk {

/// Rotating-frame state of the massless body: generalized positions
/// (q1, q2) and momenta (p1, p2).
template <class R>
struct ThreeBodyState {
    R q1{}, q2{}, p1{}, p2{};
};

template <class R>
struct SectionPoint {
    R q1{}, p1{};
    R crossing_time{};
    // diagnostics: residual of the refined crossing and dq2/dt there
    R q2{}, dq2dt{};
};

/// Planar circular restricted three-body problem in rotating coordinates,
/// mass ratio mu. The primary sits at (-mu, 0) and the secondary at
/// (1-mu, 0); with mu = 0.1 these are (-0.1, 0) and (0.9, 0).
///
///   H = (p1^2 + p2^2)/2 + q2 p1 - q1 p2 - (1-mu)/d1 - mu/d2.
template <class R>
class ThreeBody {
public:
    using State = ThreeBodyState<R>;

    explicit ThreeBody(R mu, R collision_radius = R(1e-6))
        : mu_(mu), rmin_(collision_radius) {}

    R mu() const { return mu_; }

    R hamiltonian(const State& s) const {
        using std::sqrt;
        R d1 = sqrt((s.q1 + mu_) * (s.q1 + mu_) + s.q2 * s.q2);
        R d2 = sqrt((s.q1 - R(1) + mu_) * (s.q1 - R(1) + mu_) + s.q2 * s.q2);
        return (s.p1 * s.p1 + s.p2 * s.p2) / R(2) + s.q2 * s.p1 - s.q1 * s.p2 -
               (R(1) - mu_) / d1 - mu_ / d2;
    }

    /// Hamilton's equations for the state (q1, q2, p1, p2).
    std::array<R, 4> field(const std::array<R, 4>& y) const {
        using std::sqrt;
        const R q1 = y[0], q2 = y[1], p1 = y[2], p2 = y[3];
        R dx1 = q1 + mu_, dx2 = q1 - R(1) + mu_;
        R d1sq = dx1 * dx1 + q2 * q2;
        R d2sq = dx2 * dx2 + q2 * q2;
        R d1 = sqrt(d1sq), d2 = sqrt(d2sq);
        if (d1 < rmin_ || d2 < rmin_)
            throw collision_error("trajectory reached a primary body");
        R c1 = (R(1) - mu_) / (d1sq * d1);
        R c2 = mu_ / (d2sq * d2);
        return {p1 + q2,
                p2 - q1,
                p2 - c1 * dx1 - c2 * dx2,
                -p1 - c1 * q2 - c2 * q2};
    }

    State rk8_step(const State& s, R h) const {
        auto y = Integrator8<R, 4>::step([this](const std::array<R, 4>& v) { return field(v); },
                                         to_array(s), h);
        return from_array(y);
    }

    /// Section q2 = 0 with dq2/dt > 0. Crossings are bracketed on the step
    /// grid, bisected, then polished with Newton in the crossing time
    /// (dq2/dt = p2 - q1 is available in closed form). `tol` bounds |q2| at
    /// the returned points; the default is the mode tolerance.
    std::vector<SectionPoint<R>> poincare_returns(const State& s0, std::size_t count,
                                                  R h, R tol = default_tol(),
                                                  R max_time = R(100000)) const {
        std::vector<SectionPoint<R>> out;
        out.reserve(count);
        State s = s0;
        R t = R(0);
        while (out.size() < count) {
            if (t > max_time)
                throw integration_timeout("no section crossing before max time");
            State next = rk8_step(s, h);
            if (s.q2 < R(0) && next.q2 >= R(0)) {
                auto hit = refine_crossing(s, h, tol);
                R vq2 = hit.p2 - hit.q1;
                if (vq2 > R(0))
                    out.push_back({hit.q1, hit.p1, t + last_dt_, hit.q2, vq2});
            }
            s = next;
            t += h;
        }
        return out;
    }

    /// State on the section with H = h0 and the dq2/dt > 0 branch:
    /// p2 = q1 + sqrt(q1^2 - p1^2 + 2 U(q1) + 2 h0).
    static State section_seed(R q1, R p1, R h0, R mu) {
        using std::abs;
        using std::sqrt;
        R d1 = abs(q1 + mu), d2 = abs(q1 - R(1) + mu);
        if (d1 == R(0) || d2 == R(0))
            throw infeasible_seed("seed coincides with a primary");
        R u = (R(1) - mu) / d1 + mu / d2;
        R disc = q1 * q1 - p1 * p1 + R(2) * u + R(2) * h0;
        if (disc <= R(0))
            throw infeasible_seed("energy level has no real p2 at this (q1, p1)");
        return {q1, R(0), p1, q1 + sqrt(disc)};
    }

    static constexpr R default_tol() {
        return precision_traits<R>::mode == PrecisionMode::fast ? R(1e-13) : R(1e-25);
    }

private:
    static std::array<R, 4> to_array(const State& s) { return {s.q1, s.q2, s.p1, s.p2}; }
    static State from_array(const std::array<R, 4>& y) { return {y[0], y[1], y[2], y[3]}; }

    /// Refine the crossing inside (anchor, anchor + h].
    State refine_crossing(const State& anchor, R h, R tol) const {
        using std::abs;
        R lo = R(0), hi = h;
        R dt = h / R(2);
        State probe = rk8_step(anchor, dt);
        for (int i = 0; i < 10; ++i) {
            if (probe.q2 >= R(0))
                hi = dt;
            else
                lo = dt;
            dt = (lo + hi) / R(2);
            probe = rk8_step(anchor, dt);
        }
        for (int i = 0; i < 80; ++i) {
            if (abs(probe.q2) <= tol) {
                last_dt_ = dt;
                return probe;
            }
            R slope = probe.p2 - probe.q1;   // dq2/dt
            R step = (slope == R(0)) ? (hi - lo) / R(2) : probe.q2 / slope;
            R cand = dt - step;
            if (cand <= lo || cand >= hi) cand = (lo + hi) / R(2);  // keep the bracket
            if (probe.q2 >= R(0))
                hi = dt;
            else
                lo = dt;
            dt = cand;
            probe = rk8_step(anchor, dt);
        }
        throw numerical_error("section crossing refinement did not converge");
    }

    R mu_;
    R rmin_;
    mutable R last_dt_{};
};

} // namespace birk
