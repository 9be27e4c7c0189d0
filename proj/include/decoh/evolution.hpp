#pragma once

#include <cstddef>
#include <vector>

#include "decoh/collision.hpp"
#include "decoh/common.hpp"
#include "decoh/grid.hpp"
#include "decoh/packet.hpp"
#include "decoh/scattering.hpp"
#include "decoh/state.hpp"

namespace decoh {

struct TimeSpec {
    double T = 1.92e-2;
    std::size_t L = 2401;

    double dt() const { return T / double(L); }
    void validate() const;  // T > 0, L >= 1
};

// A run of N instantaneous collisions, the k-th applied before the stepping
// of step k * interval_steps (so the first one hits the initial state). The
// rescale flag divides the potential strength by sqrt(N).
struct CollisionSchedule {
    std::size_t N = 1;
    std::size_t interval_steps = 4;
    bool rescale = false;

    std::vector<std::size_t> collision_steps() const;
    void validate() const;
};

// One Peaceman-Rachford ADI step of the free von Neumann equation
//   i d(rho)/dt = -(1/2M) [Laplacian_X - Laplacian_X'] rho
// on the closed box with homogeneous Neumann walls (ghost-node mirroring).
// Writing K = (i Id + beta L)^{-1} (i Id - beta L) with beta = dt/(4M) and L
// the Neumann Laplacian, the update is rho -> K rho K^H: first every column
// through K, then every row through conj(K). Each application is a
// tridiagonal multiply plus a Thomas solve whose factorization is computed
// once per (grid, dt, M) at construction. The scheme is unconditionally
// stable, second order in dt, and conserves the trapezoid-weighted trace,
// Hermiticity and positivity algebraically.
class PRStepper {
public:
    PRStepper(const GridSpec& grid, double dt, double M);

    // Column/row transforms run in parallel; every slot is written by exactly
    // one task and each tridiagonal solve accumulates in fixed order, so the
    // result is identical for any thread count.
    void advance(DensityMatrix& rho) const;

    // Same arithmetic, single thread; the testing baseline for advance().
    void advance_serial(DensityMatrix& rho) const;

    const GridSpec& grid() const { return grid_; }

private:
    void step(DensityMatrix& rho, bool parallel) const;
    void transform(std::vector<cplx>& v) const;  // v -> K v

    GridSpec grid_;
    double g_ = 0.0;  // beta / h^2
    cplx mul_diag_;   // diagonal of (i Id - beta L)
    std::vector<cplx> cp_;       // Thomas: normalised upper coefficients
    std::vector<cplx> inv_den_;  // Thomas: reciprocal pivots
};

// Single step with a throwaway stepper; prefer PRStepper in loops.
DensityMatrix pr_step(const DensityMatrix& rho, double dt, double M);

struct SnapshotRecord {
    std::size_t step = 0;
    DensityMatrix rho;
    double trace = 0.0;
    double herm_defect = 0.0;
};

// Free transport for up to time.L steps, recording the state at the
// requested step indices (0 = initial state). Stops after the largest
// requested snapshot.
std::vector<SnapshotRecord> evolve(const DensityMatrix& rho0, const TimeSpec& time, double M,
                                   const std::vector<std::size_t>& snapshots);

struct TimeseriesRow {
    std::size_t step = 0;
    double t = 0.0;
    double trace = 0.0;
    double herm_defect = 0.0;
    double momentum = 0.0;
    double kinetic_energy = 0.0;
    double visibility = 0.0;  // 0 when the window shows no pattern
};

struct ScenarioOptions {
    std::vector<std::size_t> snapshots;  // empty: {0, collisions, t*, L}
    double vis_lo = -0.03;
    double vis_hi = 0.03;
    std::size_t n_k = 2048;        // momentum quadrature points
    std::size_t bvp_points = 4096; // finite-difference resolution (numeric potentials)
    bool record_timeseries = true;
};

struct ScenarioResult {
    std::vector<SnapshotRecord> snapshots;
    std::vector<TimeseriesRow> timeseries;
    std::size_t t_star_step = 0;  // X0 M / p_H rounded to steps (0 when p_H <= 0)
    std::vector<std::size_t> collision_steps;
};

// Full pipeline: build the initial two-bump state, apply scheduled collisions
// (kernel built once from pot, rescaled when flagged) interleaved with free
// transport, and record diagnostics per step plus density-matrix snapshots.
// Timeseries rows show the state after any collision applied at that step.
ScenarioResult run_scenario(const HeavyStateSpec& heavy, const GridSpec& grid,
                            const TimeSpec& time, double M, const PotentialSpec& pot,
                            const LightPacket& packet, const CollisionSchedule& schedule,
                            const ScenarioOptions& options = {});

}  // namespace decoh
