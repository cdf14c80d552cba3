#pragma once

#include <cstddef>
#include <span>

#include "birk/compensated.hpp"
#include "birk/errors.hpp"
#include "birk/weights.hpp"

namespace birk {

/// WB_N(f) = sum_n w_hat[n] * values[n]. T may be the real type or its
/// complex companion; complex data is averaged componentwise by the same
/// code path.
template <class R, class T>
T weighted_birkhoff(std::span<const T> values, const WeightScheme<R>& scheme) {
    if (values.size() != scheme.size())
        throw contract_error("value count does not match weight window");
    Kahan<T> acc;
    for (std::size_t n = 0; n < values.size(); ++n)
        acc.add(values[n] * scheme.at(n));
    return acc.value();
}

template <class R, class T>
T weighted_birkhoff(const std::vector<T>& values, const WeightScheme<R>& scheme) {
    return weighted_birkhoff<R, T>(std::span<const T>(values), scheme);
}

/// Plain arithmetic mean (B_N).
template <class T>
T uniform_average(std::span<const T> values) {
    if (values.empty()) throw contract_error("uniform_average of empty sequence");
    Kahan<T> acc;
    for (const T& v : values) acc.add(v);
    return acc.value() / scalar_t<T>(static_cast<long long>(values.size()));
}

template <class T>
T uniform_average(const std::vector<T>& values) {
    return uniform_average(std::span<const T>(values));
}

} // namespace birk
