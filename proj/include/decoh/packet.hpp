#pragma once

#include "decoh/grid.hpp"

namespace decoh {

// Gaussian light-particle packet held in momentum representation:
//   chi_hat(k) = (2 sigma^2 / pi)^{1/4} exp(-sigma^2 (k-p)^2 - i (k-p) x_l),
// a unit-norm wave packet centred at x_l with mean momentum p and position
// spread sigma.
struct LightPacket {
    double x_l = 0.2;
    double sigma = 0.02;
    double p = 250.0;

    void validate() const;  // sigma > 0
};

cplx chi_hat(const LightPacket& pk, double k);

// |chi_hat(k)|^2 in closed form: sqrt(2 sigma^2/pi) exp(-2 sigma^2 (k-p)^2).
double packet_weight(const LightPacket& pk, double k);

// Half-cell-offset uniform grid over [-K, K] with K = |p| + 5/sigma:
//   k_i = -K + (i + 1/2) dk,  dk = 2K/n_k.
// The Gaussian weight is below 1e-21 outside [p - 5/sigma, p + 5/sigma], the
// offset keeps k = 0 off the grid, and k_i = -k_{n_k-1-i} holds exactly, so
// mirrored samples are index lookups rather than interpolations.
MomentumGrid momentum_grid_for(const LightPacket& pk, std::size_t n_k = 2048);

}  // namespace decoh
