#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "decoh/grid.hpp"
#include "decoh/packet.hpp"

namespace decoh {

// Interaction potentials of the light particle. All are nonnegative with
// strength alpha (the integral of V over the line); the barrier and Gaussian
// shapes carry their own width parameters.

struct DeltaPotential {
    double alpha = 1000.0;
};

struct BarrierPotential {
    double alpha = 500.0;  // V0 = alpha / (2a)
    double a = 1e-2;       // half-width
};

struct GaussianPotential {
    double alpha = 500.0;   // V0 = alpha / (sqrt(2 pi) sigma_v)
    double sigma_v = 1e-2;  // width
};

struct TabulatedPotential {
    std::vector<std::pair<double, double>> samples;  // (position, V >= 0), sorted
    double a = 0.0;  // support half-width; samples lie within [-a, a]
};

struct PotentialSpec {
    std::variant<DeltaPotential, BarrierPotential, GaussianPotential, TabulatedPotential> v;

    double strength() const;
    PotentialSpec rescaled(double factor) const;  // alpha -> factor * alpha
    void validate() const;
};

struct Amplitudes {
    cplx r;
    cplx t;
};

// Delta potential, closed form: r = -alpha/(alpha - i|k|), t = -i|k|/(alpha - i|k|).
// alpha = 0 is the free line (r = 0, t = 1, including at k = 0); for alpha > 0
// the zero-energy limit is total reflection (r = -1, t = 0).
Amplitudes delta_amplitudes(double alpha, double k);

// Square barrier, closed form, with k0^2 = k^2 - 2 V0 taken as one complex
// number: the expressions are analytic in k0^2, so the principal branch
// covers propagation over the barrier, tunneling (E < V0) and the E = V0
// point with a single formula. Requires k != 0.
Amplitudes barrier_amplitudes(double alpha, double a, double k);

// Stationary scattering solve for sampled potentials (gaussian or tabulated):
// second-order finite differences on [-a, a] with discrete transparent
// boundary rows, so an incoming unit plane wave enters from the left and the
// outgoing waves leave without reflection at the artificial boundaries.
// Returns r and t read off from the boundary values. k < 0 is handled by the
// mirrored potential. Requires k != 0 and n_points >= 64.
Amplitudes numeric_amplitudes(const PotentialSpec& pot, double k, std::size_t n_points = 4096);

// Unitarity tolerances: closed forms are exact up to rounding; the finite-
// difference path is limited by truncation at the default resolution.
inline constexpr double tol_unitarity_analytic = 1e-10;
inline constexpr double tol_unitarity_numeric = 1e-6;

struct AmplitudeTable {
    MomentumGrid grid;
    std::vector<cplx> r;
    std::vector<cplx> t;

    // Unitarity |r|^2 + |t|^2 = 1 at every sample, |r_k| = |r_{-k}| and the
    // cross relation r_k conj(t_{-k}) + t_k conj(r_{-k}) = 0 where both signs
    // are sampled. Throws invariant_violation naming the failed relation.
    void check_invariants(double tol) const;
};

// Evaluates the amplitudes of pot on every grid sample (closed forms for
// delta/barrier, finite differences otherwise; n_points applies to the
// finite-difference path only). Per-sample failures are reported with the
// offending k.
AmplitudeTable build_amplitude_table(const PotentialSpec& pot, const MomentumGrid& grid,
                                     std::size_t n_points = 4096);

// Scattering operator off a scatterer fixed at X, in momentum space:
//   (S chi)(k) = t_k chi(k) + e^{-2 i k X} r_{-k} chi(-k).
// chi must be sampled on the sign-symmetric table grid so that chi(-k) is the
// mirrored sample.
std::vector<cplx> apply_scattering(const AmplitudeTable& table,
                                   const std::vector<cplx>& chi,
                                   double shift_X);

}  // namespace decoh
