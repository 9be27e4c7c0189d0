#include "decoh/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "decoh/collision.hpp"

namespace decoh {

double momentum(const DensityMatrix& rho) {
    const std::size_t J = rho.size();
    cplx s(0.0);
    for (std::size_t i = 0; i + 1 < J; ++i) s += rho.at(i, i + 1);
    return -s.imag();
}

double kinetic_energy(const DensityMatrix& rho) {
    const std::size_t J = rho.size();
    const double h = rho.grid.h();
    double tot = 0.0;
    for (std::size_t i = 1; i + 1 < J; ++i)
        tot += rho.at(i + 1, i + 1).real() + rho.at(i - 1, i - 1).real() -
               2.0 * rho.at(i - 1, i + 1).real();
    return tot / (8.0 * h);
}

double momentum(const std::vector<cplx>& phi, const GridSpec& grid) {
    grid.validate();
    if (phi.size() != grid.J)
        throw invariant_violation("observable input shape", "phi length does not match the grid");
    cplx s(0.0);
    for (std::size_t i = 0; i + 1 < grid.J; ++i) s += phi[i] * std::conj(phi[i + 1]);
    return -s.imag();
}

double kinetic_energy(const std::vector<cplx>& phi, const GridSpec& grid) {
    grid.validate();
    if (phi.size() != grid.J)
        throw invariant_violation("observable input shape", "phi length does not match the grid");
    const double h = grid.h();
    double tot = 0.0;
    for (std::size_t i = 1; i + 1 < grid.J; ++i)
        tot += std::norm(phi[i + 1]) + std::norm(phi[i - 1]) -
               2.0 * (phi[i - 1] * std::conj(phi[i + 1])).real();
    return tot / (8.0 * h);
}

std::vector<double> probability_current(const DensityMatrix& rho) {
    const std::size_t J = rho.size();
    const double h = rho.grid.h();
    std::vector<double> j(J, 0.0);
    for (std::size_t i = 1; i + 1 < J; ++i)
        j[i] = -(rho.at(i, i + 1).imag() + rho.at(i - 1, i).imag()) / (2.0 * h);
    return j;
}

TransferPrediction predict_transfer(const AmplitudeTable& table, const LightPacket& packet,
                                    const DensityMatrix& rho) {
    rho.grid.validate();
    table.grid.validate();
    const std::size_t n = table.grid.size();
    if (table.r.size() != n)
        throw invariant_violation("amplitude table shape", "r size does not match the grid");
    const double dk = table.grid.spacing();

    TransferPrediction out;
    for (std::size_t i = 0; i < n; ++i) {
        const double kk = table.grid.k[i];
        const double rw = std::norm(table.r[i]) * packet_weight(packet, kk);
        out.itheta_prime += kk * rw;
        out.theta_second += kk * kk * rw;
    }
    out.itheta_prime *= 2.0 * dk;
    out.theta_second *= 4.0 * dk;

    const double h = rho.grid.h();
    const std::vector<double> gam = gamma_many(table, packet, rho.grid.nodes());
    const std::vector<double> gp = gradient(gam, h);
    const std::vector<double> dens = position_density(rho);
    const std::vector<double> cur = probability_current(rho);

    double sP = 0.0, sE = 0.0;
    for (std::size_t j = 0; j < rho.size(); ++j) {
        const double w = (j == 0 || j == rho.size() - 1) ? 0.5 : 1.0;
        sP += w * gp[j] * dens[j];
        sE += w * gp[j] * cur[j];
    }
    out.delta_P = out.itheta_prime + sP * h;
    out.delta_E = out.itheta_prime * momentum(rho) + 0.5 * out.theta_second + sE * h;
    return out;
}

double fringe_visibility(const std::vector<double>& density, const GridSpec& grid, double lo,
                         double hi) {
    grid.validate();
    if (density.size() != grid.J)
        throw invariant_violation("visibility input shape",
                                  "density length does not match the grid");
    if (!(lo < hi) || lo < -grid.H || hi > grid.H)
        throw config_error("visibility window must lie inside the grid");

    bool have_max = false, have_min = false;
    double vmax = 0.0, vmin = 0.0;
    for (std::size_t i = 1; i + 1 < grid.J; ++i) {
        const double X = grid.node(i);
        if (X < lo || X > hi) continue;
        if (density[i] > density[i - 1] && density[i] > density[i + 1]) {
            vmax = have_max ? std::max(vmax, density[i]) : density[i];
            have_max = true;
        }
        if (density[i] < density[i - 1] && density[i] < density[i + 1]) {
            vmin = have_min ? std::min(vmin, density[i]) : density[i];
            have_min = true;
        }
    }
    if (!have_max || !have_min)
        throw numerical_error("no interference pattern: the window holds fewer than two extrema");
    return (vmax - vmin) / (vmax + vmin);
}

}  // namespace decoh
