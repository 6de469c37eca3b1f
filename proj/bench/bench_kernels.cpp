// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to compare
// thread counts; sizes follow the dimensions the library actually uses.

#include <benchmark/benchmark.h>

#include <vector>

#include "mubent/cv.hpp"
#include "mubent/kernels.hpp"
#include "mubent/mubs.hpp"
#include "mubent/optimize.hpp"
#include "mubent/qmath.hpp"

using namespace mubent;

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

ComplexMatrix random_density_matrix(std::size_t dim, Rng& rng) {
    std::normal_distribution<double> g;
    const auto n = static_cast<Eigen::Index>(dim);
    ComplexMatrix a(n, n);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = {g(rng), g(rng)};
    ComplexMatrix rho = a * a.adjoint();
    return rho / rho.trace();
}

template <RealMatrix (*Kernel)(const ComplexMatrix&, const ComplexMatrix&, const ComplexMatrix&)>
void joint_probabilities(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    const ComplexMatrix rho = random_density_matrix(d * d, rng);
    const ComplexMatrix a = random_unitary(d, rng);
    const ComplexMatrix b = random_unitary(d, rng);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(rho, a, b));
}

template <void (*Kernel)(ComplexVector&, std::size_t, std::size_t, std::size_t, const ComplexMatrix&)>
void apply_local(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(2);
    ComplexVector amps = random_pure_state(ipow(n, n), rng).amplitudes();
    const ComplexMatrix u = random_unitary(n, rng);
    for (auto _ : state) {
        for (std::size_t axis = 0; axis < n; ++axis) Kernel(amps, n, n, axis, u);
        benchmark::DoNotOptimize(amps.data());
    }
}

template <double (*Kernel)(const ComplexVector&, std::size_t, std::size_t)>
void distinct_tuple_weight(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(3);
    const ComplexVector amps = random_pure_state(ipow(n, n), rng).amplitudes();
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(amps, n, n));
}

template <Eigen::VectorXd (*Kernel)(const ComplexMatrix&, std::size_t, std::span<const ComplexMatrix>)>
void local_diagonal(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(4);
    const ComplexMatrix rho = random_density_matrix(ipow(n, n), rng);
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < n; ++k) ops.push_back(random_unitary(n, rng));
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(rho, n, ops));
}

void optimizer_restarts(benchmark::State& state) {
    Rng rng(5);
    const MubSet mub = construct_mub_set(3);
    const DensityMatrix rho(random_density_matrix(9, rng));
    OptimizerConfig cfg;
    cfg.restarts = static_cast<std::size_t>(state.range(0));
    cfg.max_sweeps = 20;
    for (auto _ : state) benchmark::DoNotOptimize(maximize_im(rho, mub, cfg).best_value);
}

void cv_scan_grid(benchmark::State& state) {
    std::vector<double> r;
    for (int i = 0; i <= 50; ++i) r.push_back(0.1 * i);
    for (auto _ : state) benchmark::DoNotOptimize(cv_scan(r).size());
}

}  // namespace

BENCHMARK(joint_probabilities<kernels::serial::joint_probabilities>)->Name("joint_probabilities/serial")->DenseRange(2, 7);
BENCHMARK(joint_probabilities<kernels::parallel::joint_probabilities>)->Name("joint_probabilities/parallel")->DenseRange(2, 7);
BENCHMARK(apply_local<kernels::serial::apply_local>)->Name("apply_local/serial")->DenseRange(3, 6);
BENCHMARK(apply_local<kernels::parallel::apply_local>)->Name("apply_local/parallel")->DenseRange(3, 6);
BENCHMARK(distinct_tuple_weight<kernels::serial::distinct_tuple_weight>)->Name("distinct_tuple_weight/serial")->DenseRange(3, 7);
BENCHMARK(distinct_tuple_weight<kernels::parallel::distinct_tuple_weight>)->Name("distinct_tuple_weight/parallel")->DenseRange(3, 7);
BENCHMARK(local_diagonal<kernels::serial::local_diagonal>)->Name("local_diagonal/serial")->DenseRange(2, 4);
BENCHMARK(local_diagonal<kernels::parallel::local_diagonal>)->Name("local_diagonal/parallel")->DenseRange(2, 4);
BENCHMARK(optimizer_restarts)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(cv_scan_grid)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
