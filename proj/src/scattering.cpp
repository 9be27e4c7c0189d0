#include "decoh/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace decoh {

namespace {

// sin(z)/z with the series fallback near zero; the barrier formulas stay
// analytic in k0^2 only if this function does.
cplx sinc_z(cplx z) {
    if (std::abs(z) < 1e-6) return 1.0 - z * z / 6.0;
    return std::sin(z) / z;
}

double tabulated_half_width(const TabulatedPotential& tab) {
    if (tab.a > 0.0) return tab.a;
    double a = 0.0;
    for (const auto& s : tab.samples) a = std::max(a, std::abs(s.first));
    return a;
}

// Piecewise-linear interpolation of the tabulated samples; zero outside the
// sampled range (the potential is truncated to its support).
double interp_tabulated(const TabulatedPotential& tab, double x) {
    const auto& s = tab.samples;
    if (s.empty() || x < s.front().first || x > s.back().first) return 0.0;
    auto it = std::lower_bound(s.begin(), s.end(), x,
                               [](const auto& a, double v) { return a.first < v; });
    if (it == s.begin()) return it->second;
    const auto hi = it;
    const auto lo = it - 1;
    const double span = hi->first - lo->first;
    if (span <= 0.0) return lo->second;
    const double w = (x - lo->first) / span;
    return (1.0 - w) * lo->second + w * hi->second;
}

}  // namespace

double PotentialSpec::strength() const {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, TabulatedPotential>) {
                // Trapezoid integral of the samples.
                double s = 0.0;
                for (std::size_t i = 1; i < p.samples.size(); ++i)
                    s += 0.5 * (p.samples[i].second + p.samples[i - 1].second) *
                         (p.samples[i].first - p.samples[i - 1].first);
                return s;
            } else {
                return p.alpha;
            }
        },
        v);
}

PotentialSpec PotentialSpec::rescaled(double factor) const {
    PotentialSpec out = *this;
    std::visit(
        [factor](auto& p) {
            using T = std::decay_t<std::remove_reference_t<decltype(p)>>;
            if constexpr (std::is_same_v<T, TabulatedPotential>) {
                for (auto& s : p.samples) s.second *= factor;
            } else {
                p.alpha *= factor;
            }
        },
        out.v);
    return out;
}

void PotentialSpec::validate() const {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, DeltaPotential>) {
                if (!(p.alpha >= 0.0)) throw config_error("delta potential: alpha must be >= 0");
            } else if constexpr (std::is_same_v<T, BarrierPotential>) {
                if (!(p.alpha >= 0.0)) throw config_error("barrier potential: alpha must be >= 0");
                if (!(p.a > 0.0)) throw config_error("barrier potential: a must be positive");
            } else if constexpr (std::is_same_v<T, GaussianPotential>) {
                if (!(p.alpha >= 0.0)) throw config_error("gaussian potential: alpha must be >= 0");
                if (!(p.sigma_v > 0.0))
                    throw config_error("gaussian potential: sigma_v must be positive");
            } else {
                if (p.samples.empty()) throw config_error("tabulated potential: no samples");
                const double a = tabulated_half_width(p);
                if (!(a > 0.0))
                    throw config_error("tabulated potential: support half-width must be positive");
                double prev = -2.0 * a;
                for (const auto& s : p.samples) {
                    if (std::abs(s.first) > a * (1.0 + 1e-12))
                        throw config_error("tabulated potential: sample outside [-a, a]");
                    if (s.second < 0.0)
                        throw config_error("tabulated potential: V must be nonnegative");
                    if (s.first <= prev)
                        throw config_error("tabulated potential: positions must be increasing");
                    prev = s.first;
                }
            }
        },
        v);
}

Amplitudes delta_amplitudes(double alpha, double k) {
    if (alpha == 0.0) return {cplx(0.0), cplx(1.0)};
    const double ak = std::abs(k);
    const cplx den(alpha, -ak);
    return {-alpha / den, cplx(0.0, -ak) / den};
}

Amplitudes barrier_amplitudes(double alpha, double a, double k) {
    if (k == 0.0) throw numerical_error("barrier amplitudes are undefined at k = 0");
    const double ak = std::abs(k);
    const double V0 = alpha / (2.0 * a);
    const cplx k0sq = cplx(ak * ak - 2.0 * V0, 0.0);
    const cplx z = 2.0 * a * std::sqrt(k0sq);
    const cplx s = sinc_z(z);
    const cplx D = ak * std::cos(z) - cplx(0.0, 1.0) * (ak * ak + k0sq) * a * s;
    if (std::abs(D) < 1e-300)
        throw numerical_error("barrier amplitude denominator underflow (k = " +
                              std::to_string(k) + ")");
    const cplx phase = std::polar(1.0, -2.0 * ak * a);
    const cplx t = ak * phase / D;
    const cplx r = -cplx(0.0, 1.0) * (ak * ak - k0sq) * a * s * phase / D;
    return {r, t};
}

Amplitudes numeric_amplitudes(const PotentialSpec& pot, double k, std::size_t n_points) {
    pot.validate();
    if (k == 0.0) throw numerical_error("numeric amplitudes are undefined at k = 0");
    if (n_points < 64) throw config_error("numeric_amplitudes: n_points must be >= 64");

    double a = 0.0;
    std::vector<double> V(n_points);
    const double ak = std::abs(k);

    if (const auto* g = std::get_if<GaussianPotential>(&pot.v)) {
        // Truncate where V drops below 1e-8 of its peak.
        a = g->sigma_v * std::sqrt(2.0 * std::log(1e8));
        const double V0 = g->alpha / (std::sqrt(2.0 * pi) * g->sigma_v);
        const double h = 2.0 * a / double(n_points - 1);
        for (std::size_t i = 0; i < n_points; ++i) {
            const double x = -a + double(i) * h;
            V[i] = V0 * std::exp(-x * x / (2.0 * g->sigma_v * g->sigma_v));
        }
    } else if (const auto* tab = std::get_if<TabulatedPotential>(&pot.v)) {
        a = tabulated_half_width(*tab);
        const double h = 2.0 * a / double(n_points - 1);
        for (std::size_t i = 0; i < n_points; ++i)
            V[i] = interp_tabulated(*tab, -a + double(i) * h);
    } else {
        throw config_error("numeric_amplitudes expects a gaussian or tabulated potential");
    }

    // Incidence from the right (k < 0) is the mirrored problem.
    if (k < 0.0) std::reverse(V.begin(), V.end());

    // Support-edge nodes carry the average of the inside value and the zero
    // outside; for discontinuous potentials this restores second order.
    V.front() *= 0.5;
    V.back() *= 0.5;

    const std::size_t n = n_points;
    const double h = 2.0 * a / double(n - 1);
    const double kh = ak * h;
    if (kh >= 2.0)
        throw numerical_error("numeric_amplitudes: grid cannot resolve k = " + std::to_string(k) +
                              " (increase n_points)");

    // Discrete transparent boundaries: theta is the phase per cell of the
    // discrete plane wave, exactly 2 asin(kh/2), so the boundary rows absorb
    // the outgoing grid wave (not the continuum one) without reflection.
    const double theta = std::acos(1.0 - 0.5 * kh * kh);
    const cplx eth = std::polar(1.0, theta);

    std::vector<cplx> dg(n), rhs(n, cplx(0.0));
    for (std::size_t i = 0; i < n; ++i) dg[i] = cplx(h * h * (ak * ak - 2.0 * V[i]) - 2.0, 0.0);
    dg.front() += eth;
    dg.back() += eth;
    rhs.front() = cplx(0.0, 2.0 * std::sin(theta));

    // Thomas solve; the off-diagonals are all 1.
    std::vector<cplx> c(n - 1), d(n);
    if (std::abs(dg[0]) < 1e-300) throw numerical_error("numeric_amplitudes: zero pivot");
    c[0] = 1.0 / dg[0];
    d[0] = rhs[0] / dg[0];
    for (std::size_t i = 1; i < n; ++i) {
        const cplx m = dg[i] - c[i - 1];
        if (std::abs(m) < 1e-300) throw numerical_error("numeric_amplitudes: zero pivot");
        if (i < n - 1) c[i] = 1.0 / m;
        d[i] = (rhs[i] - d[i - 1]) / m;
    }
    std::vector<cplx> psi(n);
    psi[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) psi[i] = d[i] - c[i] * psi[i + 1];

    // Undo the incoming-wave phase accumulated over the half-width, using the
    // discrete wavenumber theta/h so that V = 0 returns r = 0, t = 1 exactly.
    const cplx unshift = std::polar(1.0, -2.0 * theta * a / h);
    const cplx r = (psi.front() - 1.0) * unshift;
    const cplx t = psi.back() * unshift;

    const double defect = std::abs(std::norm(r) + std::norm(t) - 1.0);
    if (defect > 10.0 * tol_unitarity_numeric)
        throw numerical_error("numeric_amplitudes: unitarity defect " + std::to_string(defect) +
                              " at k = " + std::to_string(k) + " (insufficient n_points)");
    return {r, t};
}

void AmplitudeTable::check_invariants(double tol) const {
    const std::size_t n = grid.size();
    if (r.size() != n || t.size() != n)
        throw invariant_violation("amplitude table shape", "r/t size does not match the grid");
    for (std::size_t i = 0; i < n; ++i) {
        const double defect = std::abs(std::norm(r[i]) + std::norm(t[i]) - 1.0);
        if (defect > tol)
            throw invariant_violation("amplitude unitarity",
                                      "| |r|^2 + |t|^2 - 1 | = " + std::to_string(defect) +
                                          " at k = " + std::to_string(grid.k[i]));
    }
    if (!grid.sign_symmetric()) return;  // mirrored relations need both signs
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = n - 1 - i;
        const double sym = std::abs(std::abs(r[i]) - std::abs(r[m]));
        if (sym > tol)
            throw invariant_violation("reflection symmetry",
                                      "| |r_k| - |r_{-k}| | = " + std::to_string(sym) +
                                          " at k = " + std::to_string(grid.k[i]));
        const double cross = std::abs(r[i] * std::conj(t[m]) + t[i] * std::conj(r[m]));
        if (cross > tol)
            throw invariant_violation("amplitude cross relation",
                                      "|r_k conj(t_{-k}) + t_k conj(r_{-k})| = " +
                                          std::to_string(cross) +
                                          " at k = " + std::to_string(grid.k[i]));
    }
}

AmplitudeTable build_amplitude_table(const PotentialSpec& pot, const MomentumGrid& grid,
                                     std::size_t n_points) {
    pot.validate();
    grid.validate();
    const std::size_t n = grid.size();

    AmplitudeTable table;
    table.grid = grid;
    table.r.resize(n);
    table.t.resize(n);

    const bool analytic = std::holds_alternative<DeltaPotential>(pot.v) ||
                          std::holds_alternative<BarrierPotential>(pot.v);

    // Per-sample evaluations are independent; results go into pre-sized slots
    // so the outcome does not depend on scheduling. Exceptions cannot cross
    // the parallel region, so failures are collected and reported after.
    std::vector<std::string> errors(n);
    bool failed = false;

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i) {
        try {
            Amplitudes amp{};
            if (const auto* dp = std::get_if<DeltaPotential>(&pot.v))
                amp = delta_amplitudes(dp->alpha, grid.k[std::size_t(i)]);
            else if (const auto* bp = std::get_if<BarrierPotential>(&pot.v))
                amp = barrier_amplitudes(bp->alpha, bp->a, grid.k[std::size_t(i)]);
            else
                amp = numeric_amplitudes(pot, grid.k[std::size_t(i)], n_points);
            table.r[std::size_t(i)] = amp.r;
            table.t[std::size_t(i)] = amp.t;
        } catch (const std::exception& e) {
            errors[std::size_t(i)] = e.what();
            failed = true;
        }
    }
    if (failed) {
        for (std::size_t i = 0; i < n; ++i)
            if (!errors[i].empty())
                throw numerical_error("amplitude table failed at k = " +
                                      std::to_string(grid.k[i]) + ": " + errors[i]);
    }

    table.check_invariants(analytic ? tol_unitarity_analytic : tol_unitarity_numeric);
    return table;
}

std::vector<cplx> apply_scattering(const AmplitudeTable& table, const std::vector<cplx>& chi,
                                   double shift_X) {
    const std::size_t n = table.grid.size();
    if (chi.size() != n)
        throw invariant_violation("scattering input shape",
                                  "chi sample count does not match the amplitude grid");
    if (!table.grid.sign_symmetric())
        throw invariant_violation("momentum grid sign symmetry",
                                  "apply_scattering needs both k and -k on the grid");

    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = n - 1 - i;  // index of -k
        const cplx phase = std::polar(1.0, -2.0 * table.grid.k[i] * shift_X);
        out[i] = table.t[i] * chi[i] + phase * table.r[m] * chi[m];
    }
    return out;
}

}  // namespace decoh
