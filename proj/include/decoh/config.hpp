#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "decoh/evolution.hpp"
#include "decoh/grid.hpp"
#include "decoh/oracle.hpp"
#include "decoh/packet.hpp"
#include "decoh/scattering.hpp"
#include "decoh/state.hpp"

namespace decoh {

// Complete description of a run. Field defaults reproduce the reference
// simulation: box [-0.1, 0.1] with 201 nodes, 2401 steps to T = 1.92e-2,
// mass 100, two bumps at +-0.05 (sigma_H = 0.01) with momenta -+340, light
// packet sigma = 0.02 / p = 250 / x_l = 0.2, delta potential alpha = 1000,
// one collision at step 0.
struct RunConfig {
    GridSpec grid;
    TimeSpec time;
    double mass = 100.0;
    HeavyStateSpec heavy;
    LightPacket packet;
    PotentialSpec potential{DeltaPotential{1000.0}};
    CollisionSchedule schedule;
    std::size_t n_k = 2048;         // momentum quadrature points
    std::size_t bvp_points = 4096;  // finite-difference points (numeric potentials)
    OracleConfig oracle;
    double vis_lo = -0.03;  // visibility window
    double vis_hi = 0.03;
    std::string out_dir = "out";
    std::vector<std::size_t> snapshots;  // empty: per-command defaults

    // Cross-field consistency beyond the per-type checks: the heavy state
    // must fit the box, the bump crossing time must lie inside the run, the
    // visibility window inside the grid, collisions and snapshots inside the
    // step range, and an explicit oracle window must cover the packet's
    // trajectory at the largest configured time.
    void validate() const;
};

// Parses a JSON document into a validated RunConfig. Omitted fields keep
// their defaults; unknown keys anywhere are rejected, never ignored. An
// empty document yields the default configuration.
RunConfig parse_config(const std::string& text);

// The fully resolved configuration as a canonical JSON string (every field
// explicit, keys sorted). Equal strings iff the runs are configured equally;
// its hash identifies the run in manifests.
std::string canonical_config_json(const RunConfig& cfg);

}  // namespace decoh
