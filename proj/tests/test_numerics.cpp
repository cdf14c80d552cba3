#include <doctest.h>

#include <cmath>
#include <vector>

#include "birk/average.hpp"
#include "birk/compensated.hpp"
#include "birk/curves.hpp"
#include "birk/weights.hpp"
#include "reference_values.hpp"

using birk::quad;

namespace {

template <class R>
std::vector<R> golden_sin_values(std::size_t n) {
    birk::RotationGrid<R> grid(birk::golden_rotation<R>());
    std::vector<R> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = birk::sin_turns(grid.value());
        grid.advance();
    }
    return v;
}

} // namespace

TEST_CASE_TEMPLATE("weight_value endpoints and analytic points", R, double, quad) {
    using std::abs;
    CHECK(birk::weight_value(R(0), 1) == R(0));
    CHECK(birk::weight_value(R(1), 1) == R(0));
    R eps = std::numeric_limits<R>::epsilon();
    CHECK(abs(birk::weight_value(R(1) / R(2), 1) - birk::from_decimal<R>(ref::exp_m4)) <
          R(8) * eps);
    CHECK(abs(birk::weight_value(R(1) / R(2), 2) - birk::from_decimal<R>(ref::exp_m16)) <
          R(8) * eps * birk::from_decimal<R>(ref::exp_m16));
    CHECK_THROWS_AS(birk::weight_value(R(-0.1), 1), birk::contract_error);
    CHECK_THROWS_AS(birk::weight_value(R(1.1), 1), birk::contract_error);
    CHECK_THROWS_AS(birk::weight_value(R(0.5), 0), birk::contract_error);
}

TEST_CASE_TEMPLATE("make_weights basic shapes", R, double, quad) {
    auto w2 = birk::WeightScheme<R>::make(2, 1);
    CHECK(w2.at(0) == R(0));
    CHECK(w2.at(1) == R(1));

    auto w4 = birk::WeightScheme<R>::make(4, 1);
    CHECK(w4.at(0) == R(0));
    CHECK(w4.at(1) == w4.at(3));

    auto w100 = birk::WeightScheme<R>::make(100, 1);
    std::size_t arg = 0;
    for (std::size_t i = 0; i < 100; ++i)
        if (w100.at(i) > w100.at(arg)) arg = i;
    CHECK(arg == 50);

    CHECK_THROWS_AS(birk::WeightScheme<R>::make(1, 1), birk::contract_error);
}

TEST_CASE_TEMPLATE("weights normalize and stay symmetric", R, double, quad) {
    using std::abs;
    const R eps = std::numeric_limits<R>::epsilon();
    for (std::size_t n : {std::size_t(2), std::size_t(10), std::size_t(1000),
                          std::size_t(100000)}) {
        for (int p : {1, 2}) {
            auto s = birk::WeightScheme<R>::make(n, p);
            birk::Kahan<R> total;
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(s.at(i) >= R(0));
                total.add(s.at(i));
            }
            CHECK(abs(total.value() - R(1)) <= R(10) * eps);
            for (std::size_t i = 1; i < n; ++i)
                CHECK(s.at(i) == s.at(n - i));  // bit-exact
        }
    }
}

TEST_CASE_TEMPLATE("averages of constants and tiny sequences", R, double, quad) {
    using std::abs;
    std::vector<R> ones{R(1), R(1), R(1)};
    CHECK(birk::uniform_average(ones) == R(1));
    std::vector<R> half{R(0), R(1)};
    CHECK(birk::uniform_average(half) == R(1) / R(2));
    CHECK_THROWS_AS(birk::uniform_average(std::vector<R>{}), birk::contract_error);

    auto s = birk::WeightScheme<R>::make(64, 1);
    std::vector<R> c(64, R(3));
    CHECK(abs(birk::weighted_birkhoff(c, s) - R(3)) < R(64) * std::numeric_limits<R>::epsilon());
    std::vector<R> wrong(63, R(0));
    CHECK_THROWS_AS(birk::weighted_birkhoff(wrong, s), birk::contract_error);
}

TEST_CASE("complex sequences average componentwise") {
    using C = birk::complex_t<double>;
    auto s = birk::WeightScheme<double>::make(16, 1);
    std::vector<C> v(16, C(2.0, -1.0));
    C r = birk::weighted_birkhoff(v, s);
    CHECK(std::abs(r - C(2.0, -1.0)) < 1e-14);
}

TEST_CASE("golden rotation: weighted average beats uniform by many orders") {
    // f = sin(2 pi x) along x_{n+1} = x_n + rho: the true space average is 0.
    const std::size_t n = 10000;
    auto vals = golden_sin_values<quad>(n);
    auto s = birk::WeightScheme<quad>::make(n, 1);
    quad wb = birk::weighted_birkhoff(vals, s);
    quad bn = birk::uniform_average(vals);
    using std::abs;
    CHECK(abs(wb) < quad(1e-25));          // measured ~1e-34; bound from the convergence run
    CHECK(abs(bn) > quad(1e-6));           // |B_10000| = 4.2e-5
    CHECK(abs(bn) < quad(1e-3));
}

TEST_CASE("uniform average matches the closed-form golden-rotation values") {
    // |B_N| has the exact form |sin(pi N rho) sin(pi (N-1) rho)| / (N sin(pi rho)).
    const std::size_t Ns[8] = {1000, 2000, 4000, 8000, 16000, 32000, 64000, 100000};
    for (int i = 0; i < 8; ++i) {
        auto vals = golden_sin_values<double>(Ns[i]);
        double bn = std::abs(birk::uniform_average(vals));
        CHECK(bn == doctest::Approx(ref::bn_abs[i]).epsilon(1e-6));
    }
}

TEST_CASE("p=2 reaches the 1e-30 level no later than p=1") {
    int first_p1 = 0, first_p2 = 0;
    for (int n = 100; n <= 2000; n += 100) {
        auto vals = golden_sin_values<quad>(static_cast<std::size_t>(n));
        for (int p : {1, 2}) {
            auto s = birk::WeightScheme<quad>::make(static_cast<std::size_t>(n), p);
            using std::abs;
            quad e = abs(birk::weighted_birkhoff(vals, s));
            int& first = (p == 1) ? first_p1 : first_p2;
            if (first == 0 && e <= quad(1e-30)) first = n;
        }
    }
    CHECK(first_p1 == ref::crossing_n_p1);
    CHECK(first_p2 == ref::crossing_n_p2);
    CHECK(first_p2 <= first_p1);
}

TEST_CASE("rotation grid stays on frac(n rho) after long iteration") {
    using std::abs;
    quad rho = birk::golden_rotation<quad>();
    birk::RotationGrid<quad> g(rho);
    for (int i = 0; i < 100000; ++i) g.advance();
    quad direct = birk::RotationGrid<quad>::at(rho, 100000);
    CHECK(abs(g.value() - direct) < quad(1e-32));
}
