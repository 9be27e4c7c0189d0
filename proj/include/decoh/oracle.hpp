#pragma once

#include <cstddef>
#include <vector>

#include "decoh/common.hpp"
#include "decoh/packet.hpp"

namespace decoh {

// Configuration of the finite-time validation study. The closed-form
// scattering amplitudes describe the instantaneous-collision limit; this
// module checks them against the exact finite-time propagator for the delta
// potential, with no shared numerics beyond the FFT.
struct OracleConfig {
    double alpha = 1000.0;
    std::vector<double> taus = {0.03, 0.1, 0.3, 1.0};
    LightPacket packet{0.0, 0.02, 0.0};  // x_l, sigma, p
    double x_window = 0.0;               // quadrature half-width; 0 = automatic
    std::size_t n_x = 0;                 // spatial points (power of two); 0 = automatic

    // Automatic window: packet support plus the distance travelled at the
    // packet's fastest relevant speed, with margin for the scattered tail.
    double window_for(double tau) const;
    // Automatic resolution: keeps the spacing at or below 1.5e-3, never
    // fewer than 2^14 points.
    std::size_t points_for(double W) const;

    void validate() const;
};

// Free propagation for time t (any sign) of samples on the uniform grid
// x_i = -W + i (2W/n): multiplication by e^{-i k^2 t / 2} in Fourier space.
std::vector<cplx> free_propagate(const std::vector<cplx>& chi, double t, double W);

// Exact delta-potential propagator for time t:
//   U_alpha(t; x, x') = U_0(t; x - x') - alpha \int_0^inf e^{-alpha u}
//                       U_0(t; u + |x| + |x'|) du,
// with U_0 the free kernel. The u-integral is tabulated by Simpson quadrature
// on [0, 40/alpha] and the x' sum contracted with a folded copy of chi via an
// FFT cross-correlation, O(n log n) overall. Throws numerical_error when the
// window truncates the state (norm loss above 1e-3).
std::vector<cplx> delta_propagator_apply(double alpha, double t, const std::vector<cplx>& chi,
                                         double W);

// Finite-time scattering: free backward by tau, exact propagation forward by
// tau + tau_prime, free backward by tau_prime. Converges to the closed-form
// scattering operator as the times grow.
std::vector<cplx> finite_time_S(double alpha, double tau, double tau_prime,
                                const std::vector<cplx>& chi, double W);

struct ConvergenceRow {
    double tau = 0.0;
    double l2_error = 0.0;  // |S(tau,tau) chi - S chi|_2 / |chi|_2
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    double fitted_slope = 0.0;  // least-squares slope of log(error) vs log(tau)
};

// Runs finite_time_S(tau, tau) for every configured tau against the
// closed-form scattering operator evaluated on the same FFT bins.
ConvergenceStudy convergence_study(const OracleConfig& cfg);

}  // namespace decoh
