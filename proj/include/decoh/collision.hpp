#pragma once

#include <cstddef>
#include <vector>

#include "decoh/common.hpp"
#include "decoh/grid.hpp"
#include "decoh/packet.hpp"
#include "decoh/scattering.hpp"
#include "decoh/state.hpp"

namespace decoh {

// Arithmetic noise is far below quadrature error, so both kernel structure
// checks and the gamma reality check budget at this level.
inline constexpr double tol_kernel = 1e-8;
inline constexpr double tol_gamma_imag_rel = 1e-8;

// Multiplicative collision kernel I(X_i, X_j) on the heavy-particle grid,
// row-major like DensityMatrix.
struct CollisionKernel {
    GridSpec grid;
    std::vector<cplx> values;

    CollisionKernel() = default;
    explicit CollisionKernel(const GridSpec& g) : grid(g), values(g.J * g.J, cplx(0.0)) {}

    std::size_t size() const { return grid.J; }
    cplx& at(std::size_t i, std::size_t j) { return values[i * grid.J + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return values[i * grid.J + j]; }

    // Unit diagonal, |I| <= 1, Hermitian symmetry; throws on violation.
    void check_invariants(double tol = tol_kernel) const;
};

// Decoherence amplitude: integral of (1 - e^{2ikY}) |r_k|^2 |chihat(k)|^2 dk
// over the table's momentum grid. Exactly zero at Y = 0.
cplx theta(const AmplitudeTable& table, const LightPacket& packet, double Y);

// Drift term: real part of i * integral of e^{2ikX} conj(r_{-k}) t_k
// conj(chihat(-k)) chihat(k) dk. The imaginary residue must stay below
// tol_gamma_imag_rel times the absolute quadrature mass.
double gamma_fn(const AmplitudeTable& table, const LightPacket& packet, double X);

// Gamma on many points with the quadrature arrays built once; same values as
// calling gamma_fn per point.
std::vector<double> gamma_many(const AmplitudeTable& table, const LightPacket& packet,
                               const std::vector<double>& X);

// I(X, X') = 1 - Theta(X - X') + i (Gamma(X) - Gamma(X')).
cplx collision_function(const AmplitudeTable& table, const LightPacket& packet, double X,
                        double X_prime);

// Tabulates Theta on the J distinct nonnegative differences and Gamma on the
// J nodes, then assembles the Toeplitz-plus-rank-structure kernel; O(J N_k)
// quadrature work instead of O(J^2 N_k).
CollisionKernel build_collision_kernel(const AmplitudeTable& table, const LightPacket& packet,
                                       const GridSpec& grid);

// Entry-by-entry evaluation through collision_function; serial and O(J^2 N_k).
// Kept as an independent cross-check and benchmark baseline for the fast path.
CollisionKernel build_collision_kernel_reference(const AmplitudeTable& table,
                                                 const LightPacket& packet, const GridSpec& grid);

// Entrywise product rho .* I. Trace and Hermiticity preserving.
DensityMatrix apply_collision(const DensityMatrix& rho, const CollisionKernel& kernel);

// Closed form |r_p|^2 (1 - e^{2ipY - Y^2/(2 sigma^2)}): the constant-|r|
// approximation of theta for a Gaussian packet.
cplx theta_gaussian_approx(double r_p_sq, double sigma, double p, double Y);

// Post-collision mixture model: |t_p|^2 rho0 plus equal-weight boosted bumps,
// each bump renormalised to unit trapezoid norm on the grid.
DensityMatrix mixture_approx(const DensityMatrix& rho0, cplx r_p, cplx t_p, double p,
                             const HeavyStateSpec& heavy);

// Doubles N_k from `start` until theta(Y) and gamma(X) both move by less than
// `tol`; returns the first sufficient N_k. The integrands are smooth with
// Gaussian tails, so trapezoid quadrature converges super-algebraically and
// the ladder terminates quickly.
std::size_t quadrature_self_check(const PotentialSpec& pot, const LightPacket& packet, double Y,
                                  double X, double tol = 1e-10, std::size_t start = 64);

}  // namespace decoh
