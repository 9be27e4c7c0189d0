#pragma once

// Shared helpers for the test suite: closed-form references computed
// independently of the library code under test.

#include <cmath>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "decoh/common.hpp"
#include "decoh/grid.hpp"

namespace testsupport {

using decoh::cplx;

// Free evolution of a Gaussian wavepacket
//   psi0(x) = (2 pi sigma^2)^(-1/4) exp(-(x - x0)^2 / (4 sigma^2)) e^{i p x}
// under i d/dt psi = -(1/2m) psi''. Evaluated from the exact momentum-space
// integral, so it serves as an oracle for the transport stepper.
inline cplx free_gaussian(double x, double t, double x0, double sigma, double p, double m) {
    const cplx a(sigma * sigma, t / (2.0 * m));
    const cplx b(2.0 * sigma * sigma * p, x - x0);
    const double pref = std::pow(2.0 * sigma * sigma / decoh::pi, 0.25) /
                        std::sqrt(2.0 * decoh::pi);
    return pref * std::sqrt(decoh::pi / a) *
           std::exp(b * b / (4.0 * a) - sigma * sigma * p * p) *
           std::exp(cplx(0.0, p * x0));
}

// Variance of |free_gaussian|^2 at time t for a packet of width sigma.
inline double spread_sigma_sq(double sigma, double t, double m) {
    const double r = t / (2.0 * m * sigma * sigma);
    return sigma * sigma * (1.0 + r * r);
}

// Least-squares slope of y against x.
inline double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
}

// Dense Cayley transfer matrix K = (iI + beta L)^(-1) (iI - beta L) built with
// Eigen's LU, as an independent check of the tridiagonal stepper. L is the
// Neumann Laplacian with doubled off-diagonal entries in the boundary rows.
inline Eigen::MatrixXcd dense_pr_transfer(const decoh::GridSpec& grid, double dt, double mass) {
    const auto J = static_cast<Eigen::Index>(grid.J);
    const double g = dt / (4.0 * mass) / (grid.h() * grid.h());
    Eigen::MatrixXcd bl = Eigen::MatrixXcd::Zero(J, J);
    for (Eigen::Index i = 0; i < J; ++i) {
        bl(i, i) = -2.0 * g;
        if (i + 1 < J) bl(i, i + 1) = (i == 0) ? 2.0 * g : g;
        if (i > 0) bl(i, i - 1) = (i + 1 == J) ? 2.0 * g : g;
    }
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(J, J);
    const cplx iu(0.0, 1.0);
    return (iu * eye + bl).partialPivLu().solve(iu * eye - bl);
}

inline std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Fresh empty directory under the current working directory.
inline std::string fresh_dir(const std::string& name) {
    const std::string path = "tmp_" + name;
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
    return path;
}

}  // namespace testsupport
