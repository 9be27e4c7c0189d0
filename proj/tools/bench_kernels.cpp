// Compares the parallel kernels with their serial reference implementations:
// wall time, speedup, and the largest elementwise deviation (which must be 0
// for the stepper, tiny for the rest).
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "decoh/collision.hpp"
#include "decoh/common.hpp"
#include "decoh/evolution.hpp"
#include "decoh/grid.hpp"
#include "decoh/oracle.hpp"
#include "decoh/packet.hpp"
#include "decoh/scattering.hpp"
#include "decoh/state.hpp"

using namespace decoh;

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void row(const char* name, double serial_s, double parallel_s, double max_diff) {
    std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   max |diff| %.2e\n",
                name, serial_s, parallel_s, serial_s / parallel_s, max_diff);
}

void bench_stepper() {
    const GridSpec grid{0.1, 401};
    const HeavyStateSpec heavy{0.05, 0.01, 340.0};
    const DensityMatrix rho0 = pure_density(heavy_wavefunction(heavy, grid), grid);
    const PRStepper stepper(grid, 8e-6, 100.0);
    const int steps = 20;

    DensityMatrix a = rho0;
    const auto t0 = Clock::now();
    for (int i = 0; i < steps; ++i) stepper.advance_serial(a);
    const double ts = seconds(t0);

    DensityMatrix b = rho0;
    const auto t1 = Clock::now();
    for (int i = 0; i < steps; ++i) stepper.advance(b);
    const double tp = seconds(t1);

    double diff = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
    row("transport step (J = 401)", ts, tp, diff);
}

void bench_kernel() {
    const GridSpec grid{0.1, 201};
    const LightPacket pk{0.2, 0.02, 250.0};
    const AmplitudeTable table = build_amplitude_table(
        PotentialSpec{DeltaPotential{1000.0}}, momentum_grid_for(pk, 2048));

    const auto t0 = Clock::now();
    const CollisionKernel ref = build_collision_kernel_reference(table, pk, grid);
    const double ts = seconds(t0);

    const auto t1 = Clock::now();
    const CollisionKernel fast = build_collision_kernel(table, pk, grid);
    const double tp = seconds(t1);

    double diff = 0.0;
    for (std::size_t i = 0; i < fast.values.size(); ++i)
        diff = std::max(diff, std::abs(fast.values[i] - ref.values[i]));
    row("collision kernel (J = 201)", ts, tp, diff);
}

void bench_oracle() {
    const double W = 40.0;
    const std::size_t n = 65536;
    const double delta = 2.0 * W / double(n);
    const double sigma = 1.0;
    const double amp = std::pow(2.0 * pi * sigma * sigma, -0.25);
    std::vector<cplx> chi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -W + double(i) * delta;
        const double d = x + 6.0;
        chi[i] = amp * std::exp(-d * d / (4.0 * sigma * sigma)) * std::polar(1.0, 3.0 * x);
    }

#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    const auto t0 = Clock::now();
    const std::vector<cplx> a = delta_propagator_apply(1000.0, 4.0, chi, W);
    const double ts = seconds(t0);
#ifdef _OPENMP
    omp_set_num_threads(saved);
#endif

    const auto t1 = Clock::now();
    const std::vector<cplx> b = delta_propagator_apply(1000.0, 4.0, chi, W);
    const double tp = seconds(t1);

    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
    row("point-scatter oracle (2^16)", ts, tp, diff);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("worker threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel timings run the same serial code\n");
#endif
    bench_stepper();
    bench_kernel();
    bench_oracle();
    return 0;
}
