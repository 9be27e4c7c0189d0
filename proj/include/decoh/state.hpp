#pragma once

#include <vector>

#include "decoh/common.hpp"
#include "decoh/grid.hpp"

namespace decoh {

// Initial heavy-particle superposition: two Gaussian bumps of width sigma_H
// centred at -X0 and +X0, moving toward each other with speed p_H (mass-1
// momentum units).
struct HeavyStateSpec {
    double X0 = 5e-2;
    double sigma_H = 1e-2;
    double p_H = 340.0;

    void validate() const;
};

// Dense heavy-particle density matrix on the position grid, row-major.
// Normalisation convention: trace is the trapezoid-weighted diagonal sum
// times the grid step, so a physical state has trace() == 1.
struct DensityMatrix {
    GridSpec grid;
    std::vector<cplx> values;

    DensityMatrix() = default;
    explicit DensityMatrix(const GridSpec& g) : grid(g), values(g.J * g.J, cplx(0.0)) {}

    std::size_t size() const { return grid.J; }
    cplx& at(std::size_t i, std::size_t j) { return values[i * grid.J + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return values[i * grid.J + j]; }

    double trace() const;
    // Largest elementwise deviation from Hermitian symmetry.
    double herm_defect() const;
};

// The two counter-propagating envelope bumps before any overall
// normalisation; the mixture construction reuses these directly.
struct HeavyBumps {
    std::vector<cplx> minus;  // centred at -X0, momentum +p_H
    std::vector<cplx> plus;   // centred at +X0, momentum -p_H
};

HeavyBumps heavy_bumps(const HeavyStateSpec& spec, const GridSpec& grid);

// Normalised superposition (minus + plus). The analytic whole-line norm is
// applied first; if the finite box then clips more than 1e-6 of the state the
// configuration is rejected, otherwise a final discrete renormalisation makes
// the trapezoid norm exactly one.
std::vector<cplx> heavy_wavefunction(const HeavyStateSpec& spec, const GridSpec& grid);

DensityMatrix pure_density(const std::vector<cplx>& phi, const GridSpec& grid);

// Real diagonal of the density matrix (position-space probability density).
std::vector<double> position_density(const DensityMatrix& rho);

// Trace distance via the singular values of the difference, scaled by the
// grid step to match the trace convention. Works for arbitrary matrices.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Same quantity through a Hermitian eigensolve, much faster for large J.
// Requires the difference to be Hermitian to near machine precision.
double trace_distance_hermitian(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace decoh
