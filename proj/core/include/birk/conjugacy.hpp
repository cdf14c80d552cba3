#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "birk/average.hpp"
#include "birk/compensated.hpp"
#include "birk/errors.hpp"
#include "birk/io.hpp"
#include "birk/rotation.hpp"
#include "birk/trajectory.hpp"

namespace birk {

/// Polar samples of the conjugacy h(theta) = (theta + g(theta), r(theta))
/// about a center c: theta_n = frac(n rho), g_n the lifted angular deviation,
/// rad_n the radius.
template <class R>
struct ConjugacySamples {
    std::vector<R> theta;
    std::vector<R> g;
    std::vector<R> rad;
    Vec2<R> center;
    R rho{};
};

/// Build conjugacy samples from a trajectory and its rotation number.
/// The angular deviation is lifted to a continuous function of theta by
/// walking the samples in theta-sorted order, then recentered so its mean
/// lies in (-0.5, 0.5]. If the data winds opposite to the theta grid the
/// rho representative is flipped to 1 - rho; a center with |W| != 1 is
/// rejected.
template <class R>
ConjugacySamples<R> conjugacy_samples(const Trajectory<R>& traj, R rho,
                                      const Vec2<R>& center) {
    const std::size_t n = traj.size();
    if (n < 3) throw contract_error("need at least 3 samples");
    auto ang = angle_about(traj, center);

    auto make_theta = [&](R r) {
        std::vector<R> th(n);
        RotationGrid<R> grid(r);
        for (std::size_t i = 0; i < n; ++i) {
            th[i] = grid.value();
            grid.advance();
        }
        return th;
    };
    std::vector<R> theta = make_theta(rho);

    long w = 0;
    try {
        w = winding_number_of_angles(ang.phi, rho);
    } catch (const inconsistent_ordering&) {
        throw invalid_base_point("center does not see the curve as a 1-winding", 0);
    }
    if (w != 1 && w != -1)
        throw invalid_base_point("center has |W| = " + std::to_string(w < 0 ? -w : w) +
                                     "; conjugacy needs |W| = 1",
                                 w);
    if (w == -1) {
        rho = frac(R(1) - rho);
        theta = make_theta(rho);
        w = winding_number_of_angles(ang.phi, rho);
        if (w != 1)
            throw invalid_base_point("curve orientation could not be aligned", w);
    }

    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (theta[a] != theta[b]) return theta[a] < theta[b];
        return a < b;
    });

    ConjugacySamples<R> out;
    out.theta = theta;
    out.center = center;
    out.rho = rho;
    out.g.assign(n, R(0));
    out.rad.assign(n, R(0));
    for (std::size_t i = 0; i < n; ++i)
        out.rad[i] = norm(traj[i] - center);

    R prev = R(0);
    bool first = true;
    Kahan<R> mean;
    for (std::uint32_t j : idx) {
        R raw = frac(ang.phi[j] - theta[j]);
        R lifted;
        if (first) {
            lifted = raw <= R(0.5) ? raw : raw - R(1);
            first = false;
        } else {
            lifted = raw + R(round_to_ll(prev - raw));
        }
        out.g[j] = lifted;
        prev = lifted;
        mean.add(lifted);
    }
    R shift = R(round_to_ll(mean.value() / R(static_cast<long long>(n))));
    if (shift != R(0))
        for (auto& v : out.g) v -= shift;
    return out;
}

namespace detail {

/// WB_N of f_n * e^{i 2 pi k theta_n} on theta_n = frac(n rho), computed by
/// iterating the unit phase (sigma_k(theta_n) is geometric in n) with a
/// periodic resync against the stored grid to stop phase drift.
template <class R>
complex_t<R> modulated_average(const std::vector<R>& factors,
                               const std::vector<R>& theta, long k,
                               const WeightScheme<R>& scheme) {
    using C = complex_t<R>;
    const std::size_t n = theta.size();
    if (factors.size() != n) throw contract_error("factor/theta length mismatch");
    if (scheme.size() != n) throw contract_error("weight window length mismatch");
    const R rk = R(k);
    Kahan<C> acc;
    C z(R(1), R(0));
    // theta[1] = frac(rho): k * theta_n mod 1 advances by k*rho each n
    C step = n > 1 ? unit_phase(frac(rk * theta[1])) : C(R(1), R(0));
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & 1023u) == 0) z = unit_phase(frac(rk * theta[i]));
        acc.add(z * (factors[i] * scheme.at(i)));
        z = z * step;
    }
    return acc.value();
}

} // namespace detail

/// hat a_k = WB_N(g(theta) e^{-i 2 pi k theta}).
template <class R>
complex_t<R> fourier_coefficient(const ConjugacySamples<R>& samples, long k,
                                 const WeightScheme<R>& scheme) {
    if (static_cast<std::size_t>(k < 0 ? -k : k) > samples.theta.size() / 2)
        throw contract_error("|k| beyond the sampling limit N/2");
    return detail::modulated_average(samples.g, samples.theta, -k, scheme);
}

/// Radial coefficient: WB_N(r(theta) e^{-i 2 pi k theta}).
template <class R>
complex_t<R> radial_coefficient(const ConjugacySamples<R>& samples, long k,
                                const WeightScheme<R>& scheme) {
    if (static_cast<std::size_t>(k < 0 ? -k : k) > samples.theta.size() / 2)
        throw contract_error("|k| beyond the sampling limit N/2");
    return detail::modulated_average(samples.rad, samples.theta, -k, scheme);
}

/// WB_N(sigma_j) on theta_n = frac(n rho): the error kernel of the
/// coefficient estimator. j = 0 is excluded (the value is identically 1).
template <class R>
complex_t<R> basis_average(long j, R rho, std::size_t n, const WeightScheme<R>& scheme) {
    if (j == 0) throw contract_error("j = 0 is the constant mode");
    std::vector<R> ones(n, R(1));
    std::vector<R> theta(n);
    RotationGrid<R> grid(rho);
    for (std::size_t i = 0; i < n; ++i) {
        theta[i] = grid.value();
        grid.advance();
    }
    return detail::modulated_average(ones, theta, j, scheme);
}

/// Truncated Fourier model of the conjugacy: angular deviation coefficients
/// a_k and radial coefficients b_k for |k| <= kmax.
template <class R>
struct FourierModel {
    using C = complex_t<R>;
    R rho{};
    Vec2<R> center;
    int kmax = 0;
    std::vector<C> a;  // index k + kmax
    std::vector<C> b;
    R noise_floor{};    // median |a_k| over the top decile of |k|
    R noise_floor_b{};
    PrecisionMode mode = precision_traits<R>::mode;

    const C& coeff_a(long k) const { return a[static_cast<std::size_t>(k + kmax)]; }
    const C& coeff_b(long k) const { return b[static_cast<std::size_t>(k + kmax)]; }
};

namespace detail {

template <class R>
R top_decile_median(const std::vector<complex_t<R>>& table, int kmax) {
    using std::abs;
    std::vector<R> mags;
    int lo = kmax - kmax / 10;
    if (lo < 1) lo = 1;
    for (long k = -kmax; k <= kmax; ++k)
        if (k >= lo || k <= -lo) mags.push_back(abs(table[static_cast<std::size_t>(k + kmax)]));
    if (mags.empty()) return R(0);
    std::sort(mags.begin(), mags.end());
    return mags[(mags.size() - 1) / 2];
}

} // namespace detail

/// Estimate both coefficient tables. Coefficients for distinct k are
/// independent; the loop is parallel and the result does not depend on the
/// thread count.
template <class R>
FourierModel<R> build_model(const ConjugacySamples<R>& samples, int kmax,
                            const WeightScheme<R>& scheme) {
    using C = complex_t<R>;
    if (kmax < 1) throw contract_error("kmax must be >= 1");
    if (scheme.size() != samples.theta.size())
        throw contract_error("weight window length mismatch");
    const std::size_t n = samples.theta.size();

    FourierModel<R> m;
    m.rho = samples.rho;
    m.center = samples.center;
    m.kmax = kmax;
    m.a.assign(2 * static_cast<std::size_t>(kmax) + 1, C(R(0), R(0)));
    m.b.assign(2 * static_cast<std::size_t>(kmax) + 1, C(R(0), R(0)));

    std::vector<R> gw(n), rw(n);
    for (std::size_t i = 0; i < n; ++i) {
        gw[i] = samples.g[i] * scheme.at(i);
        rw[i] = samples.rad[i] * scheme.at(i);
    }

#pragma omp parallel for schedule(dynamic, 8)
    for (int k = -kmax; k <= kmax; ++k) {
        const R rk = R(-k);
        Kahan<C> acc_a, acc_b;
        C z(R(1), R(0));
        C step = unit_phase(frac(rk * samples.theta[1]));
        for (std::size_t i = 0; i < n; ++i) {
            if ((i & 1023u) == 0) z = unit_phase(frac(rk * samples.theta[i]));
            acc_a.add(z * gw[i]);
            acc_b.add(z * rw[i]);
            z = z * step;
        }
        m.a[static_cast<std::size_t>(k + kmax)] = acc_a.value();
        m.b[static_cast<std::size_t>(k + kmax)] = acc_b.value();
    }

    m.noise_floor = detail::top_decile_median<R>(m.a, kmax);
    m.noise_floor_b = detail::top_decile_median<R>(m.b, kmax);
    return m;
}

/// Evaluate the model point c + r(theta) * e^{i 2 pi phi(theta)},
/// phi = theta + g(theta). The imaginary residue of the reconstructed real
/// series must stay at the noise floor.
template <class R>
Vec2<R> evaluate_model(const FourierModel<R>& model, R theta) {
    using std::abs;
    using C = complex_t<R>;
    C zg = model.coeff_a(0);
    C zr = model.coeff_b(0);
    C w = unit_phase(theta);
    C zp = w;
    for (long k = 1; k <= model.kmax; ++k) {
        zg += model.coeff_a(k) * zp + model.coeff_a(-k) * conj(zp);
        zr += model.coeff_b(k) * zp + model.coeff_b(-k) * conj(zp);
        zp = zp * w;
    }
    R floor_a = model.noise_floor > R(0) ? model.noise_floor
                                         : std::numeric_limits<R>::epsilon();
    R floor_b = model.noise_floor_b > R(0) ? model.noise_floor_b
                                           : std::numeric_limits<R>::epsilon();
    if (abs(cimag(zg)) > R(1e3) * floor_a || abs(cimag(zr)) > R(1e3) * floor_b)
        throw inconsistent_model("imaginary residue above the noise floor");
    R phi = theta + creal(zg);
    R rad = creal(zr);
    return {model.center.x + rad * cos_turns(phi), model.center.y + rad * sin_turns(phi)};
}

/// Model value at sample index n, theta = frac(n rho).
template <class R>
Vec2<R> predict_sample(const FourierModel<R>& model, std::uint64_t n) {
    return evaluate_model(model, RotationGrid<R>::at(model.rho, n));
}

template <class R>
struct AnalyticityFit {
    R beta{};       // |a_k| ~ 10^{-beta k}
    R r2{};
    bool analytic = false;
    R intercept{};  // fitted log10|a| at k = 0
    int points = 0;
};

/// Least-squares fit of log10 |a_k| against k over even k above the noise
/// floor. Exponential decay with a good linear fit in these axes is the
/// working-precision certificate of real-analyticity.
template <class R>
AnalyticityFit<R> analyticity_fit(const FourierModel<R>& model) {
    using std::abs;
    using std::log10;
    std::vector<R> xs, ys;
    R floor10 = R(10) * model.noise_floor;
    for (long k = 2; k <= model.kmax; k += 2) {
        R mag = abs(model.coeff_a(k));
        if (mag > floor10) {
            xs.push_back(R(k));
            ys.push_back(log10(mag));
        }
    }
    if (xs.size() < 20)
        throw insufficient_data("fewer than 20 coefficients above the noise floor");
    const std::size_t m = xs.size();
    R mx = R(0), my = R(0);
    for (std::size_t i = 0; i < m; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= R(static_cast<long long>(m));
    my /= R(static_cast<long long>(m));
    R sxy = R(0), sxx = R(0), syy = R(0);
    for (std::size_t i = 0; i < m; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    AnalyticityFit<R> fit;
    R slope = sxy / sxx;
    fit.beta = -slope;
    fit.r2 = syy > R(0) ? (sxy * sxy) / (sxx * syy) : R(1);
    fit.intercept = my - slope * mx;
    fit.points = static_cast<int>(m);
    fit.analytic = fit.beta > R(0) && fit.r2 >= R(0.9);
    return fit;
}

/// Estimated truncation tail sum 2 * sum_{k > kmax} 10^{c - beta k} from the
/// fitted decay.
template <class R>
R tail_bound(const FourierModel<R>& model, const AnalyticityFit<R>& fit) {
    using std::pow;
    if (fit.beta <= R(0)) return std::numeric_limits<R>::infinity();
    R q = pow(R(10), -fit.beta);
    R first = pow(R(10), fit.intercept - fit.beta * R(model.kmax + 1));
    return R(2) * first / (R(1) - q);
}

/// Tail estimate from the decay near the truncation edge. Spectra whose
/// slope changes along k (narrowing analyticity width) make the global fit
/// extrapolate badly, so the slope is taken from the informative
/// coefficients in the upper half of the k range, per series.
template <class R>
R local_tail_bound(const FourierModel<R>& model, bool radial = false) {
    using std::abs;
    using std::log10;
    using std::pow;
    R floor10 = R(10) * (radial ? model.noise_floor_b : model.noise_floor);
    std::vector<R> xs, ys;
    for (long k = 2; k <= model.kmax; k += 2) {
        R mag = abs(radial ? model.coeff_b(k) : model.coeff_a(k));
        if (mag > floor10) {
            xs.push_back(R(k));
            ys.push_back(log10(mag));
        }
    }
    if (xs.size() < 4) return floor10 * R(2 * model.kmax + 1);
    std::size_t lo = xs.size() / 2;
    R mx = R(0), my = R(0);
    for (std::size_t i = lo; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    R m = R(static_cast<long long>(xs.size() - lo));
    mx /= m;
    my /= m;
    R sxy = R(0), sxx = R(0);
    for (std::size_t i = lo; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    R beta = sxx > R(0) ? -sxy / sxx : R(0);
    if (beta <= R(0)) return std::numeric_limits<R>::infinity();
    R intercept = my + beta * mx;
    R q = pow(R(10), -beta);
    R first = pow(R(10), intercept - beta * R(model.kmax + 1));
    return R(2) * first / (R(1) - q) + floor10 * R(2 * model.kmax + 1);
}

/// Self-describing text serialization, stamped with the precision mode.
template <class R>
void save_model(const FourierModel<R>& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw contract_error("cannot open model file: " + path);
    out << "birk-fourier-model 1\n";
    out << "precision " << precision_traits<R>::name << "\n";
    out << "rho " << format_real(model.rho) << "\n";
    out << "center " << format_real(model.center.x) << " " << format_real(model.center.y)
        << "\n";
    out << "kmax " << model.kmax << "\n";
    out << "noise_floor " << format_real(model.noise_floor) << " "
        << format_real(model.noise_floor_b) << "\n";
    for (long k = -model.kmax; k <= model.kmax; ++k)
        out << "a " << k << " " << format_real(creal(model.coeff_a(k))) << " "
            << format_real(cimag(model.coeff_a(k))) << "\n";
    for (long k = -model.kmax; k <= model.kmax; ++k)
        out << "b " << k << " " << format_real(creal(model.coeff_b(k))) << " "
            << format_real(cimag(model.coeff_b(k))) << "\n";
}

template <class R>
FourierModel<R> load_model(const std::string& path) {
    using C = complex_t<R>;
    std::ifstream in(path);
    if (!in) throw contract_error("cannot open model file: " + path);
    std::string tag;
    int version = 0;
    in >> tag >> version;
    if (tag != "birk-fourier-model" || version != 1)
        throw contract_error("not a model file: " + path);
    FourierModel<R> m;
    std::string key;
    in >> key >> tag;
    if (key != "precision" || tag != precision_traits<R>::name)
        throw contract_error("model precision stamp '" + tag + "' does not match mode");
    std::string sx, sy;
    in >> key >> sx;
    m.rho = from_decimal<R>(sx);
    in >> key >> sx >> sy;
    m.center = {from_decimal<R>(sx), from_decimal<R>(sy)};
    in >> key >> m.kmax;
    in >> key >> sx >> sy;
    m.noise_floor = from_decimal<R>(sx);
    m.noise_floor_b = from_decimal<R>(sy);
    m.a.assign(2 * static_cast<std::size_t>(m.kmax) + 1, C(R(0), R(0)));
    m.b.assign(2 * static_cast<std::size_t>(m.kmax) + 1, C(R(0), R(0)));
    long k;
    while (in >> key >> k >> sx >> sy) {
        C v(from_decimal<R>(sx), from_decimal<R>(sy));
        if (key == "a")
            m.a[static_cast<std::size_t>(k + m.kmax)] = v;
        else if (key == "b")
            m.b[static_cast<std::size_t>(k + m.kmax)] = v;
        else
            throw contract_error("unexpected model row: " + key);
    }
    return m;
}

} // namespace birk
