#pragma once

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <string_view>

#include "birk/errors.hpp"

namespace birk {

/// Working precision of a whole job. Every kernel is templated on the real
/// type; this enum is the runtime switch used at the CLI boundary.
enum class PrecisionMode { fast, high };

using quad = boost::multiprecision::float128;

template <class R>
struct precision_traits;

template <>
struct precision_traits<double> {
    static constexpr PrecisionMode mode = PrecisionMode::fast;
    // floor(53 * log10(2))
    static constexpr int significant_digits = 15;
    // round-trip safe
    static constexpr int print_digits = 17;
    static constexpr const char* name = "fast";
};

template <>
struct precision_traits<quad> {
    static constexpr PrecisionMode mode = PrecisionMode::high;
    // floor(113 * log10(2)); relative differences of 1e-32 stay well above
    // epsilon = 1.9e-34
    static constexpr int significant_digits = 34;
    static constexpr int print_digits = 36;
    static constexpr const char* name = "high";
};

inline PrecisionMode parse_precision(std::string_view s) {
    if (s == "fast") return PrecisionMode::fast;
    if (s == "high") return PrecisionMode::high;
    throw contract_error("unknown precision mode: " + std::string(s));
}

inline const char* precision_name(PrecisionMode m) {
    return m == PrecisionMode::fast ? "fast" : "high";
}

template <class R>
struct complex_of;

template <>
struct complex_of<double> {
    using type = std::complex<double>;
};

template <>
struct complex_of<quad> {
    using type = boost::multiprecision::complex128;
};

template <class R>
using complex_t = typename complex_of<R>::type;

/// Scalar companion of a value type (identity for reals).
template <class T>
struct scalar_of {
    using type = T;
};
template <>
struct scalar_of<std::complex<double>> {
    using type = double;
};
template <>
struct scalar_of<boost::multiprecision::complex128> {
    using type = quad;
};
template <class T>
using scalar_t = typename scalar_of<T>::type;

inline double creal(const std::complex<double>& z) { return z.real(); }
inline double cimag(const std::complex<double>& z) { return z.imag(); }
inline quad creal(const boost::multiprecision::complex128& z) { return z.real(); }
inline quad cimag(const boost::multiprecision::complex128& z) { return z.imag(); }

/// Parse a decimal literal at full working precision (double literals would
/// truncate quad constants).
template <class R>
R from_decimal(std::string_view s) {
    if constexpr (std::is_same_v<R, double>) {
        return std::stod(std::string(s));
    } else {
        return R(std::string(s));
    }
}

template <class R>
const R& pi_v() {
    static const R v = from_decimal<R>(
        "3.14159265358979323846264338327950288419716939937510582097");
    return v;
}

template <class R>
const R& two_pi_v() {
    static const R v = from_decimal<R>(
        "6.28318530717958647692528676655900576839433879875021164194");
    return v;
}

/// frac(x) in [0, 1).
template <class R>
R frac(R x) {
    using std::floor;
    R f = x - floor(x);
    if (f >= R(1)) f -= R(1);   // guard against rounding at the boundary
    if (f < R(0)) f += R(1);
    return f;
}

template <class R>
long long round_to_ll(R x) {
    using std::floor;
    return static_cast<long long>(floor(x + R(0.5)));
}

namespace detail {

// Quadrant split of u in [0,1): u = m/4 + d with |d| <= 1/8 and the
// subtraction exact, so sin(2*pi*u) never sees a large reduced argument.
template <class R>
inline void quadrant_split(R u, int& m, R& d) {
    m = static_cast<int>(u * R(4) + R(0.5));
    d = u - R(m) * R(0.25);
    if (m == 4) m = 0;
}

} // namespace detail

/// sin(2*pi*t). Angles measured in turns throughout the library; reducing
/// mod 1 before scaling by 2*pi keeps the absolute error at the ulp level
/// instead of ulp(2*pi*t).
template <class R>
R sin_turns(R t) {
    using std::cos;
    using std::sin;
    int m;
    R d;
    detail::quadrant_split(frac(t), m, d);
    R a = two_pi_v<R>() * d;
    switch (m) {
        case 0: return sin(a);
        case 1: return cos(a);
        case 2: return -sin(a);
        default: return -cos(a);
    }
}

/// cos(2*pi*t).
template <class R>
R cos_turns(R t) {
    using std::cos;
    using std::sin;
    int m;
    R d;
    detail::quadrant_split(frac(t), m, d);
    R a = two_pi_v<R>() * d;
    switch (m) {
        case 0: return cos(a);
        case 1: return -sin(a);
        case 2: return -cos(a);
        default: return sin(a);
    }
}

/// e^{i 2 pi t} on the unit circle.
template <class R>
complex_t<R> unit_phase(R t) {
    using std::cos;
    using std::sin;
    int m;
    R d;
    detail::quadrant_split(frac(t), m, d);
    R a = two_pi_v<R>() * d;
    R s = sin(a), c = cos(a);
    switch (m) {
        case 0: return complex_t<R>(c, s);
        case 1: return complex_t<R>(-s, c);
        case 2: return complex_t<R>(-c, -s);
        default: return complex_t<R>(s, -c);
    }
}

/// atan2 in turns, result in [0, 1).
template <class R>
R angle_turns(R y, R x) {
    using std::atan2;
    return frac(atan2(y, x) / two_pi_v<R>());
}

} // namespace birk
