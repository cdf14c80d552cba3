#pragma once

#include <cstddef>
#include <vector>

#include "birk/compensated.hpp"
#include "birk/errors.hpp"
#include "birk/precision.hpp"

namespace birk {

/// The bump weight w^[p](t) = exp(-[t(1-t)]^{-p}) on (0,1), zero at the ends.
/// All derivatives vanish at t = 0 and t = 1, which is what buys the
/// super-polynomial convergence of the weighted averages.
template <class R>
R weight_value(R t, int p) {
    using std::exp;
    if (p < 1) throw contract_error("weight exponent p must be >= 1");
    if (t < R(0) || t > R(1)) throw contract_error("weight argument outside [0,1]");
    if (t == R(0) || t == R(1)) return R(0);
    R u = t * (R(1) - t);
    R up = u;
    for (int i = 1; i < p; ++i) up *= u;
    return exp(-R(1) / up);
}

/// Normalized weight vector for a window of length N:
///   w_hat[n] = w(n/N) / sum_j w(j/N),  n = 0..N-1.
///
/// w_hat[0] = 0, sum = 1 up to rounding, and w_hat[n] == w_hat[N-n]
/// bit-for-bit (the argument product is formed symmetrically).
template <class R>
class WeightScheme {
public:
    static WeightScheme make(std::size_t n, int p) {
        using std::exp;
        if (n < 2) throw contract_error("weight window needs N >= 2");
        if (p < 1) throw contract_error("weight exponent p must be >= 1");
        WeightScheme s;
        s.p_ = p;
        s.w_.assign(n, R(0));
        const R rn = R(static_cast<long long>(n));
        Kahan<R> total;
        for (std::size_t i = 1; i < n; ++i) {
            // t(1-t) as (i/N)*((N-i)/N): commuted operands give identical
            // rounding for i and N-i, so the symmetry is exact.
            R u = (R(static_cast<long long>(i)) / rn) *
                  (R(static_cast<long long>(n - i)) / rn);
            R up = u;
            for (int q = 1; q < p; ++q) up *= u;
            R w = exp(-R(1) / up);
            s.w_[i] = w;
            total.add(w);
        }
        const R sum = total.value();
        for (std::size_t i = 1; i < n; ++i) s.w_[i] /= sum;
        return s;
    }

    std::size_t size() const { return w_.size(); }
    int exponent() const { return p_; }
    R at(std::size_t i) const { return w_[i]; }
    const std::vector<R>& values() const { return w_; }

private:
    WeightScheme() = default;
    int p_ = 1;
    std::vector<R> w_;
};

} // namespace birk
