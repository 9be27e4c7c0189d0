#include "decoh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "decoh/fft.hpp"
#include "decoh/scattering.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace decoh {

namespace {

double l2_norm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

void check_grid(const std::vector<cplx>& chi, double W) {
    if (!(W > 0.0)) throw config_error("oracle: window half-width must be positive");
    if (chi.size() < 4 || !is_pow2(chi.size()))
        throw config_error("oracle: sample count must be a power of two (>= 4)");
}

}  // namespace

double OracleConfig::window_for(double tau) const {
    if (x_window > 0.0) return x_window;
    const double speed = std::abs(packet.p) + 5.0 / packet.sigma + 50.0;
    return 12.0 + speed * tau;
}

std::size_t OracleConfig::points_for(double W) const {
    if (n_x > 0) {
        if (!is_pow2(n_x)) throw config_error("oracle.n_x must be a power of two");
        return n_x;
    }
    const std::size_t n = next_pow2(std::size_t(std::ceil(2.0 * W / 1.5e-3)));
    return std::max<std::size_t>(n, std::size_t(1) << 14);
}

void OracleConfig::validate() const {
    if (!(alpha >= 0.0)) throw config_error("oracle.alpha must be >= 0");
    packet.validate();
    if (taus.empty()) throw config_error("oracle.taus must not be empty");
    double prev = 0.0;
    for (double t : taus) {
        if (!(t > prev)) throw config_error("oracle.taus must be positive and increasing");
        prev = t;
    }
    if (n_x > 0 && !is_pow2(n_x)) throw config_error("oracle.n_x must be a power of two");
    if (x_window < 0.0) throw config_error("oracle.x_window must be >= 0");
}

std::vector<cplx> free_propagate(const std::vector<cplx>& chi, double t, double W) {
    check_grid(chi, W);
    const std::size_t n = chi.size();
    const double delta = 2.0 * W / double(n);
    const std::vector<double> k = fft_frequencies(n, delta);

    std::vector<cplx> v = chi;
    fft_inplace(v, false);
    for (std::size_t m = 0; m < n; ++m) v[m] *= std::polar(1.0, -0.5 * k[m] * k[m] * t);
    fft_inplace(v, true);
    return v;
}

std::vector<cplx> delta_propagator_apply(double alpha, double t, const std::vector<cplx>& chi,
                                         double W) {
    check_grid(chi, W);
    if (t == 0.0) throw config_error("oracle: propagation time must be nonzero");
    if (!(alpha >= 0.0)) throw config_error("oracle: alpha must be >= 0");

    std::vector<cplx> out = free_propagate(chi, t, W);
    if (alpha == 0.0) return out;  // free line

    const std::size_t n = chi.size();
    const std::size_t half = n / 2;
    const double delta = 2.0 * W / double(n);

    // G(s) = alpha int_0^{40/alpha} e^{-alpha u} U_0(t; u + s) du on the
    // nonnegative lattice s_m = m delta, by Simpson quadrature. The kernel
    // magnitude is constant, so the e^{-alpha u} factor alone sets the cutoff
    // (relative tail e^{-40}).
    const std::size_t nu = 1024;  // Simpson intervals
    const double du = (40.0 / alpha) / double(nu);
    std::vector<double> coef(nu + 1);
    for (std::size_t q = 0; q <= nu; ++q) {
        const double wq = (q == 0 || q == nu) ? 1.0 : (q % 2 == 1 ? 4.0 : 2.0);
        coef[q] = wq * (du / 3.0) * std::exp(-alpha * double(q) * du);
    }
    const cplx pref = alpha / std::sqrt(cplx(0.0, 2.0 * pi * t));

    std::vector<cplx> G(n + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t m = 0; m <= std::ptrdiff_t(n); ++m) {
        const double s = double(m) * delta;
        cplx acc(0.0);
        for (std::size_t q = 0; q <= nu; ++q) {
            const double y = double(q) * du + s;
            acc += coef[q] * std::polar(1.0, y * y / (2.0 * t));
        }
        G[std::size_t(m)] = pref * acc;
    }

    // Fold the input onto |x|: Mb[b] = chi(b delta) + chi(-b delta). The grid
    // carries x = -W but not x = +W, hence the asymmetric endpoints.
    std::vector<cplx> Mb(n + 1, cplx(0.0));
    Mb[0] = chi[half];
    for (std::size_t b = 1; b < half; ++b) Mb[b] = chi[half + b] + chi[half - b];
    Mb[half] = chi[0];

    // C[a] = sum_b G[a+b] Mb[b] for a = 0..half, as one FFT cross-correlation:
    // convolving G with the reversed fold puts C[a] at lag a + n.
    const std::size_t lfft = next_pow2(2 * (n + 1));
    std::vector<cplx> A(lfft, cplx(0.0)), B(lfft, cplx(0.0));
    std::copy(G.begin(), G.end(), A.begin());
    for (std::size_t b = 0; b <= n; ++b) B[b] = Mb[n - b];
    fft_inplace(A, false);
    fft_inplace(B, false);
    for (std::size_t m = 0; m < lfft; ++m) A[m] *= B[m];
    fft_inplace(A, true);

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = std::size_t(std::abs(std::ptrdiff_t(i) - std::ptrdiff_t(half)));
        out[i] -= A[n + a] * delta;
    }

    const double nin = l2_norm(chi);
    const double nout = l2_norm(out);
    if (nin > 0.0 && std::abs(nout / nin - 1.0) > 1e-3)
        throw numerical_error("oracle window too small: norm drift " +
                              std::to_string(std::abs(nout / nin - 1.0)));
    return out;
}

std::vector<cplx> finite_time_S(double alpha, double tau, double tau_prime,
                                const std::vector<cplx>& chi, double W) {
    if (!(tau > 0.0) || !(tau_prime > 0.0))
        throw config_error("oracle: scattering times must be positive");
    const std::vector<cplx> v1 = free_propagate(chi, -tau, W);
    const std::vector<cplx> v2 = delta_propagator_apply(alpha, tau + tau_prime, v1, W);
    return free_propagate(v2, -tau_prime, W);
}

ConvergenceStudy convergence_study(const OracleConfig& cfg) {
    cfg.validate();
    ConvergenceStudy study;

    for (const double tau : cfg.taus) {
        const double W = cfg.window_for(tau);
        const std::size_t n = cfg.points_for(W);
        const double delta = 2.0 * W / double(n);

        // Position-space packet on the oracle grid.
        std::vector<cplx> chi(n);
        const double s2 = cfg.packet.sigma * cfg.packet.sigma;
        const double amp = std::pow(2.0 * pi * s2, -0.25);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = -W + double(i) * delta;
            const double d = x - cfg.packet.x_l;
            chi[i] = amp * std::exp(-d * d / (4.0 * s2)) * std::polar(1.0, cfg.packet.p * x);
        }

        const std::vector<cplx> got = finite_time_S(cfg.alpha, tau, tau, chi, W);

        // Closed-form scattering operator on the same FFT bins; bin n-m
        // carries -k of bin m.
        std::vector<cplx> ck = chi;
        fft_inplace(ck, false);
        const std::vector<double> k = fft_frequencies(n, delta);
        std::vector<cplx> sk(n);
        for (std::size_t m = 0; m < n; ++m) {
            const cplx mirror = ck[(n - m) % n];
            sk[m] = ck[m] + delta_amplitudes(cfg.alpha, k[m]).r * (ck[m] + mirror);
        }
        fft_inplace(sk, true);

        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff += std::norm(got[i] - sk[i]);
        study.rows.push_back({tau, std::sqrt(diff) / l2_norm(chi)});
    }

    if (study.rows.size() >= 2) {
        double mt = 0.0, me = 0.0;
        for (const auto& r : study.rows) {
            mt += std::log(r.tau);
            me += std::log(r.l2_error);
        }
        mt /= double(study.rows.size());
        me /= double(study.rows.size());
        double num = 0.0, den = 0.0;
        for (const auto& r : study.rows) {
            num += (std::log(r.tau) - mt) * (std::log(r.l2_error) - me);
            den += (std::log(r.tau) - mt) * (std::log(r.tau) - mt);
        }
        study.fitted_slope = num / den;
    }
    return study;
}

}  // namespace decoh
