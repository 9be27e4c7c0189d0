#include "decoh/state.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

namespace decoh {

namespace {

Eigen::MatrixXcd difference(const DensityMatrix& a, const DensityMatrix& b) {
    if (!(a.grid == b.grid))
        throw invariant_violation("trace distance grids", "operands live on different grids");
    const auto n = Eigen::Index(a.size());
    using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> ma(a.values.data(), n, n);
    Eigen::Map<const RowMat> mb(b.values.data(), n, n);
    return ma - mb;
}

}  // namespace

void HeavyStateSpec::validate() const {
    if (!(sigma_H > 0.0)) throw config_error("heavy state: sigma_H must be positive");
    if (!(X0 >= 0.0)) throw config_error("heavy state: X0 must be nonnegative");
}

double DensityMatrix::trace() const {
    const double h = grid.h();
    double s = 0.0;
    for (std::size_t j = 0; j < grid.J; ++j) {
        const double w = (j == 0 || j == grid.J - 1) ? 0.5 : 1.0;
        s += w * at(j, j).real();
    }
    return s * h;
}

double DensityMatrix::herm_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.J; ++i)
        for (std::size_t j = i; j < grid.J; ++j)
            worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    return worst;
}

HeavyBumps heavy_bumps(const HeavyStateSpec& spec, const GridSpec& grid) {
    spec.validate();
    grid.validate();
    const double pref = std::pow(2.0 * pi, -0.25) / std::sqrt(spec.sigma_H);
    const double q = 4.0 * spec.sigma_H * spec.sigma_H;
    HeavyBumps b;
    b.minus.resize(grid.J);
    b.plus.resize(grid.J);
    for (std::size_t j = 0; j < grid.J; ++j) {
        const double X = grid.node(j);
        const double dm = X + spec.X0;
        const double dp = X - spec.X0;
        b.minus[j] = pref * std::exp(-dm * dm / q) * std::polar(1.0, spec.p_H * X);
        b.plus[j] = pref * std::exp(-dp * dp / q) * std::polar(1.0, -spec.p_H * X);
    }
    return b;
}

std::vector<cplx> heavy_wavefunction(const HeavyStateSpec& spec, const GridSpec& grid) {
    const HeavyBumps b = heavy_bumps(spec, grid);

    // Whole-line norm of the two-bump superposition; the cross term carries
    // both the spatial overlap and the momentum mismatch of the bumps.
    const double overlap = std::exp(-spec.X0 * spec.X0 / (2.0 * spec.sigma_H * spec.sigma_H)) *
                           std::exp(-2.0 * spec.sigma_H * spec.sigma_H * spec.p_H * spec.p_H);
    const double norm_line = std::sqrt(2.0 * (1.0 + overlap));

    std::vector<cplx> phi(grid.J);
    for (std::size_t j = 0; j < grid.J; ++j) phi[j] = (b.minus[j] + b.plus[j]) / norm_line;

    const double h = grid.h();
    double s = 0.0;
    for (std::size_t j = 0; j < grid.J; ++j) {
        const double w = (j == 0 || j == grid.J - 1) ? 0.5 : 1.0;
        s += w * std::norm(phi[j]);
    }
    const double norm_box = std::sqrt(s * h);
    if (std::abs(norm_box - 1.0) > 1e-6)
        throw invariant_violation("state clipped by box",
                                  "discrete norm " + std::to_string(norm_box) +
                                      "; enlarge H or the grid resolution");
    for (auto& v : phi) v /= norm_box;
    return phi;
}

DensityMatrix pure_density(const std::vector<cplx>& phi, const GridSpec& grid) {
    grid.validate();
    if (phi.size() != grid.J)
        throw invariant_violation("pure density shape", "phi length does not match the grid");
    DensityMatrix rho(grid);
    for (std::size_t i = 0; i < grid.J; ++i) {
        const cplx a = phi[i];
        for (std::size_t j = 0; j < grid.J; ++j) rho.at(i, j) = a * std::conj(phi[j]);
    }
    return rho;
}

std::vector<double> position_density(const DensityMatrix& rho) {
    std::vector<double> d(rho.size());
    for (std::size_t j = 0; j < rho.size(); ++j) d[j] = rho.at(j, j).real();
    return d;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    const Eigen::MatrixXcd diff = difference(a, b);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(diff);
    return svd.singularValues().sum() * a.grid.h();
}

double trace_distance_hermitian(const DensityMatrix& a, const DensityMatrix& b) {
    const Eigen::MatrixXcd diff = difference(a, b);
    const double scale = diff.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    const double defect = (diff - diff.adjoint()).cwiseAbs().maxCoeff();
    if (defect > 1e-8 * scale)
        throw invariant_violation("hermitian trace distance",
                                  "difference is not Hermitian (defect " +
                                      std::to_string(defect) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum() * a.grid.h();
}

}  // namespace decoh
