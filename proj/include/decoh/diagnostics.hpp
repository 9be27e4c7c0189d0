#pragma once

#include <vector>

#include "decoh/common.hpp"
#include "decoh/grid.hpp"
#include "decoh/packet.hpp"
#include "decoh/scattering.hpp"
#include "decoh/state.hpp"

namespace decoh {

// Predicted collision-induced changes of the heavy particle's observables.
// All four entries are real; the predictions are evaluated on the state
// passed to predict_transfer (the pre-collision state).
struct TransferPrediction {
    double delta_P = 0.0;        // predicted momentum gain
    double delta_E = 0.0;        // predicted kinetic-energy gain (mass-1 units)
    double itheta_prime = 0.0;   // i Theta'(0) = 2 int k |r_k|^2 |chihat|^2 dk
    double theta_second = 0.0;   // Theta''(0)  = 4 int k^2 |r_k|^2 |chihat|^2 dk
};

// Observables use the mass-1 convention throughout: momentum is <p>, kinetic
// energy is <p^2>/2, the current integrates to the momentum. Physical values
// follow by dividing by the heavy mass M where needed.

// Expectation of the momentum operator by centered differences: the negative
// imaginary part of the superdiagonal sum. Requires Hermitian input.
double momentum(const DensityMatrix& rho);

// Expectation of p^2/2 by centered first derivatives on both arguments,
// summed over interior nodes.
double kinetic_energy(const DensityMatrix& rho);

// Pure-state forms of the two observables, O(J) memory. Used where the dense
// matrix would not fit (grid-refinement checks at large J); they match the
// matrix forms exactly on rho = phi phi^*.
double momentum(const std::vector<cplx>& phi, const GridSpec& grid);
double kinetic_energy(const std::vector<cplx>& phi, const GridSpec& grid);

// Probability current on the diagonal, zero at the boundary nodes; its
// trapezoid integral reproduces momentum(rho) up to boundary leakage.
std::vector<double> probability_current(const DensityMatrix& rho);

// Momentum/energy transfer predicted from the amplitudes and the packet:
//   delta_P = iTheta'(0) + int Gamma'(X) rho(X,X) dX
//   delta_E = iTheta'(0) P(rho) + Theta''(0)/2 + int Gamma'(X) j(X) dX
// with Gamma' by centered differences of the tabulated Gamma.
TransferPrediction predict_transfer(const AmplitudeTable& table, const LightPacket& packet,
                                    const DensityMatrix& rho);

// (max - min) / (max + min) over the local extrema of the density inside
// [lo, hi], extrema found by 3-point comparison. Throws numerical_error when
// the window holds no maximum or no minimum (nothing to measure).
double fringe_visibility(const std::vector<double>& density, const GridSpec& grid, double lo,
                         double hi);

}  // namespace decoh
