#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "birk/compensated.hpp"
#include "birk/errors.hpp"
#include "birk/trajectory.hpp"

namespace birk {

/// A planar curve given by a finite Fourier sum gamma(x) = sum_k c_k z^k,
/// z = e^{i 2 pi x}, together with the rotation number used to sample it.
/// Sampling gives the quasiperiodic trajectory gamma_n = gamma(frac(n rho)).
template <class R>
class CurveSpec {
public:
    enum class Kind { fish, flower, pure_circle, custom };

    using C = complex_t<R>;

    static CurveSpec fish(R rho) {
        CurveSpec s(Kind::fish, rho);
        s.coeffs_ = {
            {-1, C(from_decimal<R>("1.4"), from_decimal<R>("-2"))},
            {0, C(from_decimal<R>("4.1"), from_decimal<R>("1.34"))},
            {1, C(from_decimal<R>("-2"), from_decimal<R>("2.412"))},
            {2, C(from_decimal<R>("-2.5"), from_decimal<R>("-1.752"))},
        };
        return s;
    }

    static CurveSpec flower(R rho) {
        CurveSpec s(Kind::flower, rho);
        s.coeffs_ = {{1, C(R(3) / R(4), R(0))}, {6, C(R(1), R(0))}};
        return s;
    }

    static CurveSpec pure_circle(R rho) {
        CurveSpec s(Kind::pure_circle, rho);
        s.coeffs_ = {{1, C(R(1), R(0))}};
        return s;
    }

    static CurveSpec custom(std::vector<std::pair<int, C>> coeffs, R rho) {
        CurveSpec s(Kind::custom, rho);
        s.coeffs_ = std::move(coeffs);
        return s;
    }

    Kind kind() const { return kind_; }
    R rho() const { return rho_; }
    const std::vector<std::pair<int, C>>& coeffs() const { return coeffs_; }

    /// gamma(x); each mode is evaluated as c_k * e^{i 2 pi frac(k x)} so the
    /// phase is reduced before scaling.
    C point(R x) const {
        C acc(R(0), R(0));
        for (const auto& [k, c] : coeffs_)
            acc += c * unit_phase(frac(R(k) * x));
        return acc;
    }

    /// gamma(frac(n rho)) for n = 0..N-1.
    Trajectory<R> trajectory(std::size_t n) const {
        if (n < 1) throw contract_error("trajectory length must be >= 1");
        Trajectory<R> t;
        t.pts.reserve(n);
        RotationGrid<R> grid(rho_);
        for (std::size_t i = 0; i < n; ++i) {
            C z = point(grid.value());
            t.pts.push_back({creal(z), cimag(z)});
            grid.advance();
        }
        t.meta.system = name();
        t.meta.n = n;
        t.meta.mode = precision_traits<R>::mode;
        return t;
    }

    const char* name() const {
        switch (kind_) {
            case Kind::fish: return "fish";
            case Kind::flower: return "flower";
            case Kind::pure_circle: return "pure-circle";
            default: return "custom";
        }
    }

private:
    CurveSpec(Kind k, R rho) : kind_(k), rho_(rho) {}
    Kind kind_;
    R rho_;
    std::vector<std::pair<int, C>> coeffs_;
};

/// frac((sqrt(5)-1)/2), the rotation number used by the stock test curves.
template <class R>
R golden_rotation() {
    using std::sqrt;
    return (sqrt(R(5)) - R(1)) / R(2);
}

} // namespace birk
