#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "birk/conjugacy.hpp"
#include "birk/curves.hpp"

using birk::quad;

namespace {

// samples with a prescribed angular deviation g(theta) on the golden grid
template <class R>
birk::ConjugacySamples<R> synthetic_samples(std::size_t n, R (*gfun)(R)) {
    birk::ConjugacySamples<R> s;
    s.rho = birk::golden_rotation<R>();
    s.center = {R(0), R(0)};
    birk::RotationGrid<R> grid(s.rho);
    for (std::size_t i = 0; i < n; ++i) {
        R th = grid.value();
        s.theta.push_back(th);
        s.g.push_back(gfun(th));
        s.rad.push_back(R(1));
        grid.advance();
    }
    return s;
}

} // namespace

TEST_CASE("conjugacy samples of a centered circle are trivial") {
    double rho = birk::golden_rotation<double>();
    auto traj = birk::CurveSpec<double>::pure_circle(rho).trajectory(500);
    auto s = birk::conjugacy_samples(traj, rho, {0.0, 0.0});
    for (std::size_t i = 0; i < s.g.size(); ++i) {
        CHECK(std::abs(s.g[i] - s.g[0]) < 1e-12);  // constant up to lift
        CHECK(s.rad[i] == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(std::abs(s.g[0]) <= 0.5);
}

TEST_CASE("conjugacy samples flip orientation when rho is the 1-rho class") {
    double rho = birk::golden_rotation<double>();
    auto traj = birk::CurveSpec<double>::pure_circle(rho).trajectory(500);
    auto s = birk::conjugacy_samples(traj, birk::frac(1.0 - rho), {0.0, 0.0});
    CHECK(s.rho == doctest::Approx(rho).epsilon(1e-14));
}

TEST_CASE("offset circle produces period-1 nonconstant g and r") {
    double rho = birk::golden_rotation<double>();
    auto circ = birk::CurveSpec<double>::pure_circle(rho).trajectory(2000);
    // view the same circle from an off-center point
    auto s = birk::conjugacy_samples(circ, rho, {0.3, 0.0});
    double gmin = 1e9, gmax = -1e9, rmin = 1e9, rmax = -1e9;
    for (std::size_t i = 0; i < s.g.size(); ++i) {
        gmin = std::min(gmin, s.g[i]);
        gmax = std::max(gmax, s.g[i]);
        rmin = std::min(rmin, s.rad[i]);
        rmax = std::max(rmax, s.rad[i]);
    }
    CHECK(gmax - gmin > 0.01);
    CHECK(rmax == doctest::Approx(1.3).epsilon(1e-3));
    CHECK(rmin == doctest::Approx(0.7).epsilon(1e-3));
}

TEST_CASE("center with |W| != 1 is rejected") {
    double rho = birk::golden_rotation<double>();
    auto flower = birk::CurveSpec<double>::flower(rho).trajectory(5000);
    CHECK_THROWS_AS(birk::conjugacy_samples(flower, rho, {0.0, 0.0}),
                    birk::invalid_base_point);
}

TEST_CASE_TEMPLATE("fourier coefficients of simple deviations", R, double, quad) {
    using std::abs;
    const std::size_t n = 4096;
    auto scheme = birk::WeightScheme<R>::make(n, 1);

    auto cs = synthetic_samples<R>(n, +[](R) { return R(0.25); });
    auto a0 = birk::fourier_coefficient(cs, 0, scheme);
    CHECK(static_cast<double>(abs(a0 - birk::complex_t<R>(R(0.25), R(0)))) < 1e-13);
    auto a3 = birk::fourier_coefficient(cs, 3, scheme);
    CHECK(static_cast<double>(abs(a3)) < 1e-13);

    auto cc = synthetic_samples<R>(n, +[](R th) { return birk::cos_turns(th); });
    auto c1 = birk::fourier_coefficient(cc, 1, scheme);
    auto cm1 = birk::fourier_coefficient(cc, -1, scheme);
    CHECK(static_cast<double>(abs(c1 - birk::complex_t<R>(R(0.5), R(0)))) < 1e-12);
    CHECK(static_cast<double>(abs(cm1 - birk::complex_t<R>(R(0.5), R(0)))) < 1e-12);
    auto c2 = birk::fourier_coefficient(cc, 2, scheme);
    CHECK(static_cast<double>(abs(c2)) < 1e-12);

    CHECK_THROWS_AS(birk::fourier_coefficient(cs, long(n), scheme), birk::contract_error);
}

TEST_CASE("basis averages: j = 0 rejected, magnitude decreasing in N") {
    using std::abs;
    quad rho = birk::golden_rotation<quad>();
    auto s100 = birk::WeightScheme<quad>::make(100, 1);
    CHECK_THROWS_AS(birk::basis_average(0L, rho, 100, s100), birk::contract_error);

    quad small = abs(birk::basis_average(1L, rho, 100, s100));
    CHECK(static_cast<double>(small) > 1e-12);  // measured 4.7e-10 at N = 100

    auto s100k = birk::WeightScheme<quad>::make(100000, 1);
    for (long j : {1L, 5L, 89L}) {
        quad v = abs(birk::basis_average(j, rho, 100000, s100k));
        CHECK(static_cast<double>(v) < 1e-25);
        CHECK(static_cast<double>(v) < static_cast<double>(small));
    }
}

TEST_CASE("estimator error is bounded by the basis-average kernel sum") {
    // g with known coefficients a_0 = 1/8, a_{+-1} = (1 -+ i)/4, a_{+-3} = -+i/16:
    // |hat a_k - a_k| <= sum_{j != 0} |a_{j+k}| |WB(sigma_j)|
    using std::abs;
    using C = birk::complex_t<quad>;
    const std::size_t n = 4096;
    quad rho = birk::golden_rotation<quad>();
    auto scheme = birk::WeightScheme<quad>::make(n, 1);

    auto a_true = [](long k) -> C {
        if (k == 0) return C(quad(1) / quad(8), quad(0));
        if (k == 1) return C(quad(0.25), quad(-0.25));
        if (k == -1) return C(quad(0.25), quad(0.25));
        if (k == 3) return C(quad(0), quad(-1) / quad(16));
        if (k == -3) return C(quad(0), quad(1) / quad(16));
        return C(quad(0), quad(0));
    };
    birk::ConjugacySamples<quad> s;
    s.rho = rho;
    s.center = {quad(0), quad(0)};
    birk::RotationGrid<quad> grid(rho);
    for (std::size_t i = 0; i < n; ++i) {
        quad th = grid.value();
        quad g = quad(1) / quad(8) + birk::cos_turns(th) / quad(2) +
                 birk::sin_turns(th) / quad(2) + birk::sin_turns(quad(3) * th) / quad(8);
        s.theta.push_back(th);
        s.g.push_back(g);
        s.rad.push_back(quad(1));
        grid.advance();
    }
    for (long k : {0L, 1L, 2L, 3L, 5L}) {
        C est = birk::fourier_coefficient(s, k, scheme);
        quad err = abs(est - a_true(k));
        quad bound = quad(0);
        for (long j = -9; j <= 9; ++j) {
            if (j == 0) continue;
            if (abs(a_true(j + k)) == quad(0)) continue;
            bound += abs(a_true(j + k)) * abs(birk::basis_average(j, rho, n, scheme));
        }
        CHECK(static_cast<double>(err) <= static_cast<double>(bound) + 1e-30);
    }
}

TEST_CASE("model of a centered circle: only b0 survives") {
    double rho = birk::golden_rotation<double>();
    auto traj = birk::CurveSpec<double>::pure_circle(rho).trajectory(4096);
    auto s = birk::conjugacy_samples(traj, rho, {0.0, 0.0});
    auto scheme = birk::WeightScheme<double>::make(4096, 1);
    auto m = birk::build_model(s, 12, scheme);
    CHECK(std::abs(birk::creal(m.coeff_b(0)) - 1.0) < 1e-13);
    for (long k = 1; k <= 12; ++k) {
        CHECK(std::abs(m.coeff_b(k)) < 1e-12);
        CHECK(std::abs(m.coeff_a(k)) < 1e-12);
    }
    // hermitian symmetry within the noise floor
    for (long k = 1; k <= 12; ++k)
        CHECK(std::abs(std::abs(m.coeff_a(k)) - std::abs(m.coeff_a(-k))) <=
              m.noise_floor + 1e-15);

    auto p = birk::evaluate_model(m, 0.125);
    CHECK(p.x == doctest::Approx(std::cos(birk::two_pi_v<double>() * 0.125)).epsilon(1e-9));
    CHECK(p.y == doctest::Approx(std::sin(birk::two_pi_v<double>() * 0.125)).epsilon(1e-9));
}

TEST_CASE("build_model agrees with the single-coefficient operation") {
    double rho = birk::golden_rotation<double>();
    auto traj = birk::CurveSpec<double>::pure_circle(rho).trajectory(1024);
    auto s = birk::conjugacy_samples(traj, rho, {0.2, 0.1});
    auto scheme = birk::WeightScheme<double>::make(1024, 1);
    auto m = birk::build_model(s, 8, scheme);
    for (long k : {-8L, -3L, 0L, 2L, 8L}) {
        auto single = birk::fourier_coefficient(s, k, scheme);
        CHECK(std::abs(m.coeff_a(k) - single) < 1e-15);
        auto singleb = birk::radial_coefficient(s, k, scheme);
        CHECK(std::abs(m.coeff_b(k) - singleb) < 1e-15);
    }
}

TEST_CASE("prediction from a model matches the far future of the circle") {
    double rho = birk::golden_rotation<double>();
    auto traj = birk::CurveSpec<double>::pure_circle(rho).trajectory(2000);
    auto s = birk::conjugacy_samples(traj, rho, {0.0, 0.0});
    auto scheme = birk::WeightScheme<double>::make(2000, 1);
    auto m = birk::build_model(s, 8, scheme);
    auto far = birk::predict_sample(m, 100000);
    double th = birk::RotationGrid<double>::at(rho, 100000);
    CHECK(far.x == doctest::Approx(std::cos(birk::two_pi_v<double>() * th)).epsilon(1e-9));
    CHECK(far.y == doctest::Approx(std::sin(birk::two_pi_v<double>() * th)).epsilon(1e-9));
}

TEST_CASE("analyticity fit on synthetic decays") {
    using C = birk::complex_t<double>;
    birk::FourierModel<double> m;
    m.kmax = 400;
    m.rho = 0.5;
    m.a.assign(801, C(0, 0));
    m.b.assign(801, C(0, 0));
    for (long k = -400; k <= 400; ++k)
        m.a[static_cast<std::size_t>(k + 400)] = C(std::pow(2.0, -std::abs(double(k))), 0);
    m.noise_floor = 1e-130;
    auto fit = birk::analyticity_fit(m);
    CHECK(fit.beta == doctest::Approx(std::log10(2.0)).epsilon(1e-6));
    CHECK(fit.r2 > 0.999);
    CHECK(fit.analytic);

    for (long k = -400; k <= 400; ++k) {
        double kk = std::abs(double(k));
        m.a[static_cast<std::size_t>(k + 400)] = C(k == 0 ? 1.0 : 1.0 / (kk * kk), 0);
    }
    m.noise_floor = 1e-9;
    auto poor = birk::analyticity_fit(m);
    CHECK(poor.beta > 0.0);
    CHECK(poor.r2 < 0.9);
    CHECK(!poor.analytic);

    m.noise_floor = 1.0;  // everything below the floor
    CHECK_THROWS_AS(birk::analyticity_fit(m), birk::insufficient_data);
}

TEST_CASE_TEMPLATE("model save/load round trip", R, double, quad) {
    R rho = birk::golden_rotation<R>();
    auto traj = birk::CurveSpec<R>::pure_circle(rho).trajectory(512);
    auto s = birk::conjugacy_samples(traj, rho, {R(0.1), R(-0.05)});
    auto scheme = birk::WeightScheme<R>::make(512, 1);
    auto m = birk::build_model(s, 6, scheme);
    const char* path = "model_roundtrip.tmp";
    birk::save_model(m, path);
    auto l = birk::load_model<R>(path);
    CHECK(l.kmax == m.kmax);
    CHECK(l.rho == m.rho);  // 36-digit round trip is exact
    for (long k = -6; k <= 6; ++k) {
        CHECK(l.coeff_a(k) == m.coeff_a(k));
        CHECK(l.coeff_b(k) == m.coeff_b(k));
    }
    std::remove(path);
}

TEST_CASE("model precision stamp is enforced") {
    double rho = birk::golden_rotation<double>();
    auto traj = birk::CurveSpec<double>::pure_circle(rho).trajectory(256);
    auto s = birk::conjugacy_samples(traj, rho, {0.0, 0.0});
    auto scheme = birk::WeightScheme<double>::make(256, 1);
    auto m = birk::build_model(s, 4, scheme);
    const char* path = "model_stamp.tmp";
    birk::save_model(m, path);
    CHECK_THROWS_AS(birk::load_model<quad>(path), birk::contract_error);
    std::remove(path);
}
