#include "decoh/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "decoh/diagnostics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace decoh {

void TimeSpec::validate() const {
    if (!(T > 0.0)) throw config_error("time.T must be positive");
    if (L < 1) throw config_error("time.L must be at least 1");
}

std::vector<std::size_t> CollisionSchedule::collision_steps() const {
    std::vector<std::size_t> steps(N);
    for (std::size_t k = 0; k < N; ++k) steps[k] = k * interval_steps;
    return steps;
}

void CollisionSchedule::validate() const {
    if (interval_steps < 1) throw config_error("schedule.interval_steps must be at least 1");
}

PRStepper::PRStepper(const GridSpec& grid, double dt, double M) : grid_(grid) {
    grid_.validate();
    if (!(dt > 0.0)) throw config_error("pr_step: dt must be positive");
    if (!(M > 0.0)) throw config_error("pr_step: mass must be positive");

    const double h = grid_.h();
    g_ = dt / (4.0 * M) / (h * h);
    mul_diag_ = cplx(2.0 * g_, 1.0);  // i + 2g

    // Factorize (i Id + beta L): diagonal i - 2g, off-diagonals g except the
    // doubled Neumann entries in the first and last rows.
    const std::size_t J = grid_.J;
    const cplx dg(-2.0 * g_, 1.0);
    cp_.resize(J - 1);
    inv_den_.resize(J);
    cplx den = dg;
    for (std::size_t i = 0;; ++i) {
        if (std::abs(den) < 1e-300) throw numerical_error("pr_step: zero pivot in factorization");
        inv_den_[i] = 1.0 / den;
        if (i == J - 1) break;
        const double du = (i == 0) ? 2.0 * g_ : g_;
        cp_[i] = du * inv_den_[i];
        const double dl = (i + 1 == J - 1) ? 2.0 * g_ : g_;
        den = dg - dl * cp_[i];
    }
}

void PRStepper::transform(std::vector<cplx>& v) const {
    const std::size_t J = grid_.J;
    std::vector<cplx> w(J);

    // w = (i Id - beta L) v
    w[0] = mul_diag_ * v[0] - 2.0 * g_ * v[1];
    for (std::size_t i = 1; i + 1 < J; ++i) w[i] = mul_diag_ * v[i] - g_ * (v[i - 1] + v[i + 1]);
    w[J - 1] = mul_diag_ * v[J - 1] - 2.0 * g_ * v[J - 2];

    // v = (i Id + beta L)^{-1} w via the cached factorization.
    v[0] = w[0] * inv_den_[0];
    for (std::size_t i = 1; i < J; ++i) {
        const double dl = (i == J - 1) ? 2.0 * g_ : g_;
        v[i] = (w[i] - dl * v[i - 1]) * inv_den_[i];
    }
    for (std::size_t i = J - 1; i-- > 0;) v[i] -= cp_[i] * v[i + 1];
}

void PRStepper::step(DensityMatrix& rho, bool parallel) const {
    if (!(rho.grid == grid_))
        throw invariant_violation("stepper grid", "density matrix grid differs from the stepper's");
    const std::size_t J = grid_.J;
#ifndef _OPENMP
    (void)parallel;
#endif

    // Pass 1: every column through K.
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(J); ++c) {
        std::vector<cplx> v(J);
        for (std::size_t j = 0; j < J; ++j) v[j] = rho.at(j, std::size_t(c));
        transform(v);
        for (std::size_t j = 0; j < J; ++j) rho.at(j, std::size_t(c)) = v[j];
    }

    // Pass 2: right-multiplication by K^H as conjugated row transforms.
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::ptrdiff_t r = 0; r < std::ptrdiff_t(J); ++r) {
        std::vector<cplx> v(J);
        for (std::size_t j = 0; j < J; ++j) v[j] = std::conj(rho.at(std::size_t(r), j));
        transform(v);
        for (std::size_t j = 0; j < J; ++j) rho.at(std::size_t(r), j) = std::conj(v[j]);
    }
}

void PRStepper::advance(DensityMatrix& rho) const { step(rho, true); }

void PRStepper::advance_serial(DensityMatrix& rho) const { step(rho, false); }

DensityMatrix pr_step(const DensityMatrix& rho, double dt, double M) {
    PRStepper stepper(rho.grid, dt, M);
    DensityMatrix out = rho;
    stepper.advance(out);
    return out;
}

namespace {

SnapshotRecord make_snapshot(std::size_t step, const DensityMatrix& rho) {
    SnapshotRecord rec;
    rec.step = step;
    rec.rho = rho;
    rec.trace = rho.trace();
    rec.herm_defect = rho.herm_defect();
    return rec;
}

}  // namespace

std::vector<SnapshotRecord> evolve(const DensityMatrix& rho0, const TimeSpec& time, double M,
                                   const std::vector<std::size_t>& snapshots) {
    time.validate();
    rho0.grid.validate();

    std::vector<std::size_t> want = snapshots;
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end()), want.end());
    if (!want.empty() && want.back() > time.L)
        throw config_error("snapshot step " + std::to_string(want.back()) +
                           " exceeds the step count " + std::to_string(time.L));

    std::vector<SnapshotRecord> out;
    DensityMatrix rho = rho0;
    std::size_t next = 0;
    if (next < want.size() && want[next] == 0) {
        out.push_back(make_snapshot(0, rho));
        ++next;
    }
    if (next >= want.size()) return out;

    const PRStepper stepper(rho0.grid, time.dt(), M);
    for (std::size_t l = 1; l <= want.back(); ++l) {
        stepper.advance(rho);
        if (want[next] == l) {
            out.push_back(make_snapshot(l, rho));
            ++next;
        }
    }
    return out;
}

ScenarioResult run_scenario(const HeavyStateSpec& heavy, const GridSpec& grid,
                            const TimeSpec& time, double M, const PotentialSpec& pot,
                            const LightPacket& packet, const CollisionSchedule& schedule,
                            const ScenarioOptions& options) {
    heavy.validate();
    grid.validate();
    time.validate();
    schedule.validate();
    if (!(M > 0.0)) throw config_error("scenario: mass must be positive");

    const double dt = time.dt();
    ScenarioResult res;
    res.collision_steps = schedule.collision_steps();
    if (!res.collision_steps.empty() && res.collision_steps.back() > time.L)
        throw config_error("collision schedule extends past the run (last collision at step " +
                           std::to_string(res.collision_steps.back()) + " of " +
                           std::to_string(time.L) + ")");

    if (heavy.p_H > 0.0) {
        const double t_star = heavy.X0 * M / heavy.p_H;
        res.t_star_step =
            std::min<std::size_t>(std::size_t(std::llround(t_star / dt)), time.L);
    }

    CollisionKernel kernel;
    if (schedule.N > 0) {
        const PotentialSpec use =
            schedule.rescale ? pot.rescaled(1.0 / std::sqrt(double(schedule.N))) : pot;
        const AmplitudeTable table =
            build_amplitude_table(use, momentum_grid_for(packet, options.n_k),
                                  options.bvp_points);
        kernel = build_collision_kernel(table, packet, grid);
    }

    std::vector<std::size_t> want = options.snapshots;
    if (want.empty()) {
        want = res.collision_steps;
        want.push_back(0);
        want.push_back(res.t_star_step);
        want.push_back(time.L);
    }
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end()), want.end());
    if (want.back() > time.L)
        throw config_error("snapshot step " + std::to_string(want.back()) +
                           " exceeds the step count " + std::to_string(time.L));

    DensityMatrix rho = pure_density(heavy_wavefunction(heavy, grid), grid);
    const PRStepper stepper(grid, dt, M);
    const std::size_t last_step = options.record_timeseries ? time.L : want.back();

    std::size_t next_coll = 0, next_snap = 0;
    for (std::size_t l = 0; l <= last_step; ++l) {
        if (next_coll < res.collision_steps.size() && res.collision_steps[next_coll] == l) {
            rho = apply_collision(rho, kernel);
            ++next_coll;
        }
        if (options.record_timeseries) {
            TimeseriesRow row;
            row.step = l;
            row.t = double(l) * dt;
            row.trace = rho.trace();
            row.herm_defect = rho.herm_defect();
            row.momentum = momentum(rho);
            row.kinetic_energy = kinetic_energy(rho);
            try {
                row.visibility = fringe_visibility(position_density(rho), grid, options.vis_lo,
                                                   options.vis_hi);
            } catch (const numerical_error&) {
                row.visibility = 0.0;  // no pattern in the window
            }
            res.timeseries.push_back(row);
        }
        if (next_snap < want.size() && want[next_snap] == l) {
            res.snapshots.push_back(make_snapshot(l, rho));
            ++next_snap;
        }
        if (l < last_step) stepper.advance(rho);
    }
    return res;
}

}  // namespace decoh
