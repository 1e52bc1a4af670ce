// Serial vs OpenMP timings for the transform kernels and the per-angle loop.

#include <chrono>
#include <cstdio>
#include <vector>

#include <omp.h>

#include "rcsgate/kernels.hpp"
#include "rcsgate/pipeline.hpp"
#include "rcsgate/synth.hpp"

using namespace rcsgate;

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        best = std::min(best, dt.count());
    }
    return best;
}

void bench_transforms(std::size_t m) {
    std::vector<Complex> in(m), out(m);
    for (std::size_t i = 0; i < m; ++i) in[i] = {std::cos(0.37 * i), std::sin(0.11 * i)};
    const kernels::FftPlan plan(m, +1);
    const double serial = best_of(3, [&] { kernels::dft_serial(in, out, +1); });
    const double parallel = best_of(3, [&] { kernels::dft_parallel(in, out, +1); });
    const double fft = best_of(20, [&] { plan.execute(in, out); });
    std::printf("dft  M=%-6zu serial %9.3f ms  parallel %9.3f ms  fft %8.3f ms\n", m, serial * 1e3, parallel * 1e3,
                fft * 1e3);
}

void bench_campaign() {
    const FrequencyGrid grid(10e9, 40e9, 1601);
    const auto sims = simulate_campaign(demo_script(), grid);
    std::vector<AngleInput> inputs;
    for (const auto& s : sims) inputs.push_back({s.theta_deg, s.dut, s.ref});
    const PipelineOptions opt;
    const double serial = best_of(3, [&] { process_angles(inputs, opt, Execution::Serial); });
    const double parallel = best_of(3, [&] { process_angles(inputs, opt, Execution::Parallel); });
    std::printf("campaign %zu angles x %zu pts  serial %8.1f ms  parallel %8.1f ms\n", inputs.size(), grid.size(),
                serial * 1e3, parallel * 1e3);
}

}  // namespace

int main() {
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
    for (std::size_t m : {1024u, 1601u, 6404u}) bench_transforms(m);
    bench_campaign();
    return 0;
}
