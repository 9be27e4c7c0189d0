#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "decoh/common.hpp"
#include "decoh/packet.hpp"
#include "decoh/scattering.hpp"

using namespace decoh;

namespace {

PotentialSpec tabulated_barrier(double alpha, double a) {
    const double v0 = alpha / (2.0 * a);
    return PotentialSpec{TabulatedPotential{{{-a, v0}, {a, v0}}, a}};
}

double unitarity_defect(const Amplitudes& a) {
    return std::abs(std::norm(a.r) + std::norm(a.t) - 1.0);
}

}  // namespace

TEST_CASE("delta amplitudes: unitarity, |k| dependence, total reflection at k = 0") {
    const double alpha = 1000.0;
    for (double k : {-500.0, -3.2, 0.5, 77.0, 500.0}) {
        const Amplitudes a = delta_amplitudes(alpha, k);
        CHECK(unitarity_defect(a) <= 1e-14);
        const Amplitudes m = delta_amplitudes(alpha, -k);
        CHECK(a.r == m.r);
        CHECK(a.t == m.t);
    }

    // At |k| = alpha the reflection coefficient is (-1 - i)/2.
    const Amplitudes at = delta_amplitudes(alpha, alpha);
    CHECK(at.r.real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(at.r.imag() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::norm(at.r) == doctest::Approx(0.5).epsilon(1e-12));

    const Amplitudes wall = delta_amplitudes(alpha, 0.0);
    CHECK(wall.r == cplx(-1.0));
    CHECK(wall.t == cplx(0.0));

    CHECK(delta_amplitudes(0.0, 0.0).t == cplx(1.0));
    CHECK(delta_amplitudes(0.0, 123.0).r == cplx(0.0));
    CHECK(delta_amplitudes(0.0, 123.0).t == cplx(1.0));
}

TEST_CASE("barrier amplitudes: free limit, unitarity, k = 0 rejection") {
    for (double k : {50.0, 250.0, 500.0}) {
        const Amplitudes f = barrier_amplitudes(0.0, 1e-2, k);
        CHECK(std::abs(f.r) <= 1e-12);
        CHECK(std::abs(f.t - 1.0) <= 1e-12);

        const Amplitudes b = barrier_amplitudes(500.0, 1e-2, k);
        CHECK(unitarity_defect(b) <= 1e-12);
        const Amplitudes bm = barrier_amplitudes(500.0, 1e-2, -k);
        CHECK(b.r == bm.r);
        CHECK(b.t == bm.t);
    }
    CHECK_THROWS_AS(barrier_amplitudes(500.0, 1e-2, 0.0), numerical_error);
}

TEST_CASE("narrow barrier approaches the delta amplitudes as the width shrinks") {
    const auto gap_at = [](double alpha, double a, double k) {
        return std::abs(std::norm(barrier_amplitudes(alpha, a, k).r) -
                        std::norm(delta_amplitudes(alpha, k).r));
    };
    CHECK(gap_at(500.0, 1e-4, 250.0) == doctest::Approx(1.026e-2).epsilon(0.02));

    const auto max_gap = [&](double a) {
        double worst = 0.0;
        for (double k : linspace(50.0, 500.0, 91)) {
            worst = std::max(worst, gap_at(500.0, a, k));
        }
        return worst;
    };
    const double g3 = max_gap(1e-3);
    const double g4 = max_gap(1e-4);
    const double g5 = max_gap(1e-5);
    CHECK(g3 == doctest::Approx(9.765e-2).epsilon(0.02));
    CHECK(g4 == doctest::Approx(1.575e-2).epsilon(0.02));
    CHECK(g5 == doctest::Approx(1.657e-3).epsilon(0.02));
    CHECK(g3 > g4);
    CHECK(g4 > g5);
}

TEST_CASE("finite-difference amplitudes reproduce the closed-form barrier") {
    const double alpha = 500.0;
    const double a = 1e-2;
    const double k = 250.0;
    const Amplitudes exact = barrier_amplitudes(alpha, a, k);
    const Amplitudes num = numeric_amplitudes(tabulated_barrier(alpha, a), k, 4097);
    CHECK(std::abs(num.r - exact.r) / std::abs(exact.r) <= 1e-6);
    CHECK(std::abs(num.t - exact.t) / std::abs(exact.t) <= 1e-6);
    CHECK(unitarity_defect(num) <= 1e-12);
}

TEST_CASE("finite-difference amplitudes: zero potential is transparent") {
    const PotentialSpec none{TabulatedPotential{{{-0.05, 0.0}, {0.05, 0.0}}, 0.05}};
    const Amplitudes f = numeric_amplitudes(none, 250.0, 1025);
    CHECK(std::abs(f.r) <= 1e-10);
    CHECK(std::abs(f.t - 1.0) <= 1e-10);
}

TEST_CASE("gaussian potential: unitarity and left-right symmetry") {
    const PotentialSpec g{GaussianPotential{500.0, 1e-2}};
    const Amplitudes f = numeric_amplitudes(g, 250.0, 4097);
    CHECK(unitarity_defect(f) <= 1e-12);
    const Amplitudes b = numeric_amplitudes(g, -250.0, 4097);
    CHECK(std::abs(f.r - b.r) <= 1e-10);
    CHECK(std::abs(f.t - b.t) <= 1e-10);
}

TEST_CASE("finite-difference amplitudes reject what the mesh cannot resolve") {
    const PotentialSpec g{GaussianPotential{500.0, 1e-2}};
    CHECK_THROWS_AS(numeric_amplitudes(g, 2000.0, 64), numerical_error);
    CHECK_THROWS_AS(numeric_amplitudes(g, 250.0, 32), config_error);
    CHECK_THROWS_AS(numeric_amplitudes(g, 0.0, 1025), numerical_error);

    const PotentialSpec d{DeltaPotential{1000.0}};
    CHECK_THROWS_AS(numeric_amplitudes(d, 250.0, 1025), config_error);
    const PotentialSpec b{BarrierPotential{500.0, 1e-2}};
    CHECK_THROWS_AS(numeric_amplitudes(b, 250.0, 1025), config_error);
}

TEST_CASE("PotentialSpec: strength, rescaling and validation") {
    const PotentialSpec d{DeltaPotential{1000.0}};
    CHECK(d.strength() == 1000.0);
    CHECK(d.rescaled(0.5).strength() == 500.0);

    const PotentialSpec tab{
        TabulatedPotential{{{-1.0, 0.0}, {0.0, 2.0}, {1.0, 0.0}}, 1.0}};
    CHECK(tab.strength() == doctest::Approx(2.0));
    CHECK(tab.rescaled(2.0).strength() == doctest::Approx(4.0));

    const PotentialSpec neg_delta{DeltaPotential{-1.0}};
    CHECK_THROWS_AS(neg_delta.validate(), config_error);
    const PotentialSpec flat{BarrierPotential{500.0, 0.0}};
    CHECK_THROWS_AS(flat.validate(), config_error);
    const PotentialSpec unsorted{TabulatedPotential{{{0.5, 1.0}, {-0.5, 1.0}}, 1.0}};
    CHECK_THROWS_AS(unsorted.validate(), config_error);
    const PotentialSpec attractive{TabulatedPotential{{{-0.5, 1.0}, {0.5, -1.0}}, 1.0}};
    CHECK_THROWS_AS(attractive.validate(), config_error);
}

TEST_CASE("amplitude table and the scattering operator") {
    const LightPacket pk{0.2, 0.02, 250.0};
    const MomentumGrid grid = momentum_grid_for(pk, 512);
    const PotentialSpec pot{DeltaPotential{1000.0}};
    const AmplitudeTable table = build_amplitude_table(pot, grid);
    REQUIRE(table.r.size() == 512);
    REQUIRE(table.t.size() == 512);
    CHECK_NOTHROW(table.check_invariants(tol_unitarity_analytic));

    std::vector<cplx> chi(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) chi[i] = chi_hat(pk, grid.k[i]);
    const std::vector<cplx> out = apply_scattering(table, chi, 0.05);
    double nin = 0.0;
    double nout = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        nin += std::norm(chi[i]);
        nout += std::norm(out[i]);
    }
    CHECK(std::abs(nout / nin - 1.0) <= 1e-12);

    MomentumGrid onesided;
    onesided.k = linspace(1.0, 2.0, 16);
    const AmplitudeTable t2 = build_amplitude_table(pot, onesided);
    const std::vector<cplx> ones(16, cplx(1.0));
    CHECK_THROWS_AS(apply_scattering(t2, ones, 0.0), invariant_violation);
}
