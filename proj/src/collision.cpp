#include "decoh/collision.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace decoh {

namespace {

// The packet weight must be negligible at the edges of the amplitude table's
// momentum window, otherwise the quadrature silently truncates the packet.
void check_coverage(const MomentumGrid& grid, const LightPacket& packet) {
    const double edge =
        std::max(packet_weight(packet, grid.k.front()), packet_weight(packet, grid.k.back()));
    if (edge > 1e-12)
        throw config_error("momentum grid does not cover the light packet (weight " +
                           std::to_string(edge) + " at the window edge)");
}

// Quadrature arrays shared by theta, gamma and the kernel builders. The grid
// is half-cell offset, so a plain sum times dk is the midpoint rule; for
// these Gaussian-tailed integrands it matches trapezoid to far below
// tol_kernel, and both converge super-algebraically.
struct QuadTables {
    std::vector<double> k;
    double dk = 0.0;
    std::vector<double> w_theta;    // |r_k|^2 |chihat(k)|^2
    std::vector<cplx> integ_gamma;  // conj(r_{-k}) t_k conj(chihat(-k)) chihat(k)
    double gamma_mass = 0.0;        // sum |integ_gamma| dk, scale of the reality check
};

QuadTables make_tables(const AmplitudeTable& table, const LightPacket& packet, bool need_gamma) {
    packet.validate();
    table.grid.validate();
    check_coverage(table.grid, packet);
    const std::size_t n = table.grid.size();
    if (table.r.size() != n || table.t.size() != n)
        throw invariant_violation("amplitude table shape", "r/t size does not match the grid");
    if (need_gamma && !table.grid.sign_symmetric())
        throw invariant_violation("momentum grid sign symmetry",
                                  "gamma needs both k and -k on the grid");

    QuadTables q;
    q.k = table.grid.k;
    q.dk = table.grid.spacing();
    std::vector<cplx> ch(n);
    for (std::size_t i = 0; i < n; ++i) ch[i] = chi_hat(packet, q.k[i]);
    q.w_theta.resize(n);
    for (std::size_t i = 0; i < n; ++i) q.w_theta[i] = std::norm(table.r[i]) * std::norm(ch[i]);
    if (need_gamma) {
        q.integ_gamma.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t m = n - 1 - i;  // index of -k
            q.integ_gamma[i] = std::conj(table.r[m]) * table.t[i] * std::conj(ch[m]) * ch[i];
            q.gamma_mass += std::abs(q.integ_gamma[i]);
        }
        q.gamma_mass *= q.dk;
    }
    return q;
}

cplx theta_from(const QuadTables& q, double Y) {
    cplx s(0.0);
    for (std::size_t i = 0; i < q.k.size(); ++i)
        s += (1.0 - std::polar(1.0, 2.0 * q.k[i] * Y)) * q.w_theta[i];
    return s * q.dk;
}

cplx gamma_complex_from(const QuadTables& q, double X) {
    cplx s(0.0);
    for (std::size_t i = 0; i < q.k.size(); ++i)
        s += std::polar(1.0, 2.0 * q.k[i] * X) * q.integ_gamma[i];
    return cplx(0.0, 1.0) * s * q.dk;
}

double gamma_checked(const QuadTables& q, cplx g) {
    if (std::abs(g.imag()) > tol_gamma_imag_rel * q.gamma_mass)
        throw invariant_violation("gamma imaginary residue",
                                  "Im = " + std::to_string(g.imag()) +
                                      " exceeds the tolerance for quadrature mass " +
                                      std::to_string(q.gamma_mass) +
                                      "; the amplitude table is inconsistent");
    return g.real();
}

}  // namespace

void CollisionKernel::check_invariants(double tol) const {
    const std::size_t J = size();
    if (values.size() != J * J)
        throw invariant_violation("kernel shape", "value count does not match the grid");
    for (std::size_t i = 0; i < J; ++i) {
        const double d = std::abs(at(i, i) - 1.0);
        if (d > tol)
            throw invariant_violation("kernel unit diagonal",
                                      "|I(X,X) - 1| = " + std::to_string(d) + " at node " +
                                          std::to_string(i));
    }
    for (std::size_t i = 0; i < J; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            const double m = std::abs(at(i, j));
            if (m > 1.0 + tol)
                throw invariant_violation("kernel contraction",
                                          "|I| = " + std::to_string(m) + " at (" +
                                              std::to_string(i) + ", " + std::to_string(j) + ")");
            if (j >= i) {
                const double hd = std::abs(at(i, j) - std::conj(at(j, i)));
                if (hd > tol)
                    throw invariant_violation("kernel hermitian symmetry",
                                              "defect " + std::to_string(hd) + " at (" +
                                                  std::to_string(i) + ", " + std::to_string(j) +
                                                  ")");
            }
        }
    }
}

cplx theta(const AmplitudeTable& table, const LightPacket& packet, double Y) {
    const QuadTables q = make_tables(table, packet, false);
    return theta_from(q, Y);
}

double gamma_fn(const AmplitudeTable& table, const LightPacket& packet, double X) {
    const QuadTables q = make_tables(table, packet, true);
    return gamma_checked(q, gamma_complex_from(q, X));
}

std::vector<double> gamma_many(const AmplitudeTable& table, const LightPacket& packet,
                               const std::vector<double>& X) {
    const QuadTables q = make_tables(table, packet, true);
    std::vector<cplx> gc(X.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(X.size()); ++i)
        gc[std::size_t(i)] = gamma_complex_from(q, X[std::size_t(i)]);
    std::vector<double> out(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) out[i] = gamma_checked(q, gc[i]);
    return out;
}

cplx collision_function(const AmplitudeTable& table, const LightPacket& packet, double X,
                        double X_prime) {
    const QuadTables q = make_tables(table, packet, true);
    const double gx = gamma_checked(q, gamma_complex_from(q, X));
    const double gxp = gamma_checked(q, gamma_complex_from(q, X_prime));
    return 1.0 - theta_from(q, X - X_prime) + cplx(0.0, gx - gxp);
}

CollisionKernel build_collision_kernel(const AmplitudeTable& table, const LightPacket& packet,
                                       const GridSpec& grid) {
    grid.validate();
    const QuadTables q = make_tables(table, packet, true);
    const std::size_t J = grid.J;
    const double h = grid.h();

    // Theta depends only on the node difference; with theta(-Y) = conj(theta(Y))
    // only the J nonnegative differences are integrated. Slots are independent
    // and each inner quadrature runs in fixed order, so the result does not
    // depend on the thread count.
    std::vector<cplx> th(J);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t d = 0; d < std::ptrdiff_t(J); ++d)
        th[std::size_t(d)] = theta_from(q, double(d) * h);

    std::vector<cplx> gc(J);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t j = 0; j < std::ptrdiff_t(J); ++j)
        gc[std::size_t(j)] = gamma_complex_from(q, grid.node(std::size_t(j)));

    std::vector<double> gam(J);
    for (std::size_t j = 0; j < J; ++j) gam[j] = gamma_checked(q, gc[j]);

    CollisionKernel ker(grid);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(J); ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            const std::ptrdiff_t d = i - std::ptrdiff_t(j);
            const cplx tv = d >= 0 ? th[std::size_t(d)] : std::conj(th[std::size_t(-d)]);
            ker.at(std::size_t(i), j) =
                1.0 - tv + cplx(0.0, gam[std::size_t(i)] - gam[j]);
        }
    }
    ker.check_invariants();
    return ker;
}

CollisionKernel build_collision_kernel_reference(const AmplitudeTable& table,
                                                 const LightPacket& packet, const GridSpec& grid) {
    grid.validate();
    const QuadTables q = make_tables(table, packet, true);
    const std::size_t J = grid.J;

    std::vector<double> gam(J);
    for (std::size_t j = 0; j < J; ++j)
        gam[j] = gamma_checked(q, gamma_complex_from(q, grid.node(j)));

    CollisionKernel ker(grid);
    for (std::size_t i = 0; i < J; ++i)
        for (std::size_t j = 0; j < J; ++j)
            ker.at(i, j) =
                1.0 - theta_from(q, grid.node(i) - grid.node(j)) + cplx(0.0, gam[i] - gam[j]);
    ker.check_invariants();
    return ker;
}

DensityMatrix apply_collision(const DensityMatrix& rho, const CollisionKernel& kernel) {
    if (!(rho.grid == kernel.grid))
        throw invariant_violation("collision grids", "density matrix and kernel grids differ");
    const std::size_t J = rho.size();
    DensityMatrix out(rho.grid);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(J); ++i)
        for (std::size_t j = 0; j < J; ++j)
            out.at(std::size_t(i), j) = rho.at(std::size_t(i), j) * kernel.at(std::size_t(i), j);
    return out;
}

cplx theta_gaussian_approx(double r_p_sq, double sigma, double p, double Y) {
    if (!(sigma > 0.0)) throw config_error("theta_gaussian_approx: sigma must be positive");
    return r_p_sq * (1.0 - std::exp(cplx(-Y * Y / (2.0 * sigma * sigma), 2.0 * p * Y)));
}

DensityMatrix mixture_approx(const DensityMatrix& rho0, cplx r_p, cplx t_p, double p,
                             const HeavyStateSpec& heavy) {
    rho0.grid.validate();
    if (rho0.values.size() != rho0.size() * rho0.size())
        throw invariant_violation("density matrix shape", "value count does not match the grid");
    const std::size_t J = rho0.size();
    const double h = rho0.grid.h();

    HeavyBumps b = heavy_bumps(heavy, rho0.grid);
    const auto boost_and_normalise = [&](std::vector<cplx>& v) {
        double s = 0.0;
        for (std::size_t j = 0; j < J; ++j) {
            v[j] *= std::polar(1.0, 2.0 * p * rho0.grid.node(j));
            const double w = (j == 0 || j == J - 1) ? 0.5 : 1.0;
            s += w * std::norm(v[j]);
        }
        const double nrm = std::sqrt(s * h);
        if (!(nrm > 0.0))
            throw invariant_violation("mixture bump normalisation",
                                      "bump has no support on the grid");
        for (auto& x : v) x /= nrm;
    };
    boost_and_normalise(b.minus);
    boost_and_normalise(b.plus);

    const double wt = std::norm(t_p);
    const double wr = 0.5 * std::norm(r_p);
    DensityMatrix out(rho0.grid);
    for (std::size_t i = 0; i < J; ++i)
        for (std::size_t j = 0; j < J; ++j)
            out.at(i, j) = wt * rho0.at(i, j) +
                           wr * (b.minus[i] * std::conj(b.minus[j]) +
                                 b.plus[i] * std::conj(b.plus[j]));
    return out;
}

std::size_t quadrature_self_check(const PotentialSpec& pot, const LightPacket& packet, double Y,
                                  double X, double tol, std::size_t start) {
    pot.validate();
    packet.validate();
    if (start < 2) throw config_error("quadrature_self_check: start must be >= 2");
    constexpr std::size_t cap = std::size_t(1) << 20;

    const auto eval = [&](std::size_t nk) {
        const MomentumGrid g = momentum_grid_for(packet, nk);
        const AmplitudeTable tab = build_amplitude_table(pot, g);
        const QuadTables q = make_tables(tab, packet, true);
        return std::pair<cplx, double>{theta_from(q, Y),
                                       gamma_checked(q, gamma_complex_from(q, X))};
    };

    auto prev = eval(start);
    for (std::size_t nk = start; nk < cap; nk *= 2) {
        const auto next = eval(nk * 2);
        if (std::abs(next.first - prev.first) < tol && std::abs(next.second - prev.second) < tol)
            return nk;
        prev = next;
    }
    throw numerical_error("quadrature self-check did not converge below N_k = 2^20");
}

}  // namespace decoh
