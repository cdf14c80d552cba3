#pragma once

#include <array>
#include <cstddef>

#include "birk/precision.hpp"

namespace birk {

/// Fixed-step one-step integrator of order 8: Gragg's smoothed modified
/// midpoint rule extrapolated over the step sequence {4, 6, 8, 10}
/// (Bulirsch-Stoer scheme run with a fixed outer step). The h^2 error
/// expansion of the smoothed midpoint makes each extrapolation column gain
/// two orders, so four columns give order 8.
///
/// The extrapolation weights are formed from the exact integer sequence at
/// runtime, so the order conditions hold to the working precision of R;
/// there is no coefficient table whose rounding could floor the accuracy of
/// high-precision runs.
template <class R, std::size_t D>
class Integrator8 {
public:
    using State = std::array<R, D>;

    /// One step of size h. F: (const State&) -> State.
    template <class F>
    static State step(const F& field, const State& y0, R h) {
        constexpr int seq[4] = {4, 6, 8, 10};
        State table[4];
        const State f0 = field(y0);
        for (int j = 0; j < 4; ++j)
            table[j] = midpoint_pass(field, y0, f0, h, seq[j]);
        // Aitken-Neville in powers of h^2
        for (int k = 1; k < 4; ++k) {
            for (int j = 3; j >= k; --j) {
                R num = R(seq[j]) / R(seq[j - k]);
                R den = num * num - R(1);
                for (std::size_t i = 0; i < D; ++i)
                    table[j][i] += (table[j][i] - table[j - 1][i]) / den;
            }
        }
        return table[3];
    }

private:
    template <class F>
    static State midpoint_pass(const F& field, const State& y0, const State& f0,
                               R h, int n) {
        const R hs = h / R(n);
        State ym = y0;                     // y_{m-1}
        State yc;                          // y_m
        for (std::size_t i = 0; i < D; ++i) yc[i] = y0[i] + hs * f0[i];
        for (int m = 1; m < n; ++m) {
            State f = field(yc);
            State yn;
            for (std::size_t i = 0; i < D; ++i) yn[i] = ym[i] + R(2) * hs * f[i];
            ym = yc;
            yc = yn;
        }
        // Gragg smoothing: (y_{n-1} + y_n + hs f(y_n)) / 2
        State fn = field(yc);
        State out;
        for (std::size_t i = 0; i < D; ++i)
            out[i] = (ym[i] + yc[i] + hs * fn[i]) / R(2);
        return out;
    }
};

} // namespace birk
