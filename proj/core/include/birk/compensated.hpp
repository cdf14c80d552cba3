#pragma once

#include <cstdint>
#include <limits>

#include "birk/precision.hpp"

namespace birk {

/// Neumaier-compensated accumulator. Works for real and complex value types
/// (compensation is componentwise for complex addition).
template <class T>
class Kahan {
public:
    void add(const T& v) {
        T t = sum_ + v;
        comp_ += (sum_ - t) + v;
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

namespace detail {

template <class R>
struct Pair {
    R hi, lo;
};

template <class R>
inline Pair<R> two_sum(R a, R b) {
    R s = a + b;
    R bp = s - a;
    R e = (a - (s - bp)) + (b - bp);
    return {s, e};
}

// Dekker product splitting; no fma dependency so it works for float128.
template <class R>
inline Pair<R> two_prod(R a, R b) {
    constexpr int half = (std::numeric_limits<R>::digits + 1) / 2;
    static_assert(half < 63, "split constant must fit in uint64");
    const R split = R((1ULL << half) + 1ULL);
    R p = a * b;
    R ah = a * split, bh = b * split;
    R a1 = ah - (ah - a), b1 = bh - (bh - b);
    R a2 = a - a1, b2 = b - b1;
    R e = ((a1 * b1 - p) + a1 * b2 + a2 * b1) + a2 * b2;
    return {p, e};
}

} // namespace detail

/// The sequence theta_n = frac(n * rho), generated with a double-word carry so
/// the accumulated value is accurate to ~1 ulp of the working precision even
/// after 10^7 steps. A plain `theta += rho` loop drifts by N*eps, which is
/// what would otherwise limit the attainable averaging floor on long windows.
template <class R>
class RotationGrid {
public:
    explicit RotationGrid(R rho) : rho_(rho) { reset(); }

    void reset() {
        hi_ = R(0);
        lo_ = R(0);
        n_ = 0;
    }

    R rho() const { return rho_; }
    std::uint64_t index() const { return n_; }

    /// Current theta_n.
    R value() const { return frac(hi_ + lo_); }

    /// Advance to theta_{n+1}.
    void advance() {
        auto s = detail::two_sum(hi_, rho_);
        lo_ += s.lo;
        hi_ = s.hi;
        if (hi_ >= R(1)) hi_ -= R(1);  // exact: hi in [1,2)
        auto r = detail::two_sum(hi_, lo_);
        hi_ = r.hi;
        lo_ = r.lo;
        ++n_;
    }

    /// frac(n * rho) for an arbitrary index, without iterating.
    static R at(R rho, std::uint64_t n) {
        using std::floor;
        auto p = detail::two_prod(rho, R(static_cast<long long>(n)));
        R hi = p.hi - floor(p.hi);
        auto s = detail::two_sum(hi, p.lo);
        return frac(s.hi + s.lo);
    }

private:
    R rho_;
    R hi_, lo_;
    std::uint64_t n_ = 0;
};

} // namespace birk
