#include <benchmark/benchmark.h>

#include "birk/average.hpp"
#include "birk/classify.hpp"
#include "birk/conjugacy.hpp"
#include "birk/curves.hpp"
#include "birk/rotation.hpp"
#include "birk/three_body.hpp"

using birk::quad;

namespace {

template <class R>
void BM_MakeWeights(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto s = birk::WeightScheme<R>::make(n, 1);
        benchmark::DoNotOptimize(s.at(n / 2));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_MakeWeights<double>)->Arg(100000);
BENCHMARK(BM_MakeWeights<quad>)->Arg(100000);

template <class R>
void BM_WeightedAverage(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto scheme = birk::WeightScheme<R>::make(n, 1);
    birk::RotationGrid<R> grid(birk::golden_rotation<R>());
    std::vector<R> v(n);
    for (auto& x : v) {
        x = birk::sin_turns(grid.value());
        grid.advance();
    }
    for (auto _ : state) {
        R r = birk::weighted_birkhoff(v, scheme);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_WeightedAverage<double>)->Arg(100000);
BENCHMARK(BM_WeightedAverage<quad>)->Arg(100000);

template <class R>
void BM_StandardMapOrbit(benchmark::State& state) {
    birk::StandardMap<R> map(R(1.4));
    for (auto _ : state) {
        birk::Vec2<R> s{R(2), R(2)};
        for (int i = 0; i < 10000; ++i) s = map.step(s);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_StandardMapOrbit<double>);
BENCHMARK(BM_StandardMapOrbit<quad>);

template <class R>
void BM_FishTrajectory(benchmark::State& state) {
    auto spec = birk::CurveSpec<R>::fish(birk::golden_rotation<R>());
    for (auto _ : state) {
        auto t = spec.trajectory(10000);
        benchmark::DoNotOptimize(t.pts.back());
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_FishTrajectory<double>);
BENCHMARK(BM_FishTrajectory<quad>);

void BM_ContinueLift(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    double rho = birk::golden_rotation<double>();
    auto traj = birk::CurveSpec<double>::fish(rho).trajectory(n);
    auto ang = birk::angle_about(traj, {7.0, 4.0});
    auto deltas = birk::raw_increments(ang);
    auto emb = birk::delay_embed(traj, 2);
    for (auto _ : state) {
        auto lift =
            birk::continue_lift(std::span<const double>(deltas.data(), deltas.size()), emb);
        benchmark::DoNotOptimize(lift.max_residual);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ContinueLift)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);

template <class R>
void BM_FourierCoefficient(benchmark::State& state) {
    const std::size_t n = 100000;
    R rho = birk::golden_rotation<R>();
    auto traj = birk::CurveSpec<R>::pure_circle(rho).trajectory(n);
    auto s = birk::conjugacy_samples(traj, rho, {R(0.2), R(0.1)});
    auto scheme = birk::WeightScheme<R>::make(n, 1);
    for (auto _ : state) {
        auto c = birk::fourier_coefficient(s, 25, scheme);
        benchmark::DoNotOptimize(c);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_FourierCoefficient<double>);
BENCHMARK(BM_FourierCoefficient<quad>);

template <class R>
void BM_ThreeBodyStep(benchmark::State& state) {
    birk::ThreeBody<R> sys(R(0.1));
    auto s = birk::ThreeBody<R>::section_seed(R(0.2), R(0), birk::from_decimal<R>("-2.63"), R(0.1));
    for (auto _ : state) {
        s = sys.rk8_step(s, R(1e-3));
        benchmark::DoNotOptimize(s.q1);
    }
}
BENCHMARK(BM_ThreeBodyStep<double>);
BENCHMARK(BM_ThreeBodyStep<quad>);

} // namespace

BENCHMARK_MAIN();
