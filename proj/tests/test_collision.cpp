#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "decoh/collision.hpp"
#include "decoh/common.hpp"
#include "decoh/grid.hpp"
#include "decoh/packet.hpp"
#include "decoh/scattering.hpp"
#include "decoh/state.hpp"

using namespace decoh;

namespace {

AmplitudeTable delta_table(double alpha, const LightPacket& pk, std::size_t nk = 2048) {
    return build_amplitude_table(PotentialSpec{DeltaPotential{alpha}},
                                 momentum_grid_for(pk, nk));
}

}  // namespace

TEST_CASE("theta: zero at coincidence, conjugate under mirror, plateau value") {
    const LightPacket pk{0.2, 0.02, 250.0};
    const AmplitudeTable table = delta_table(1000.0, pk);

    CHECK(theta(table, pk, 0.0) == cplx(0.0));

    const cplx tp = theta(table, pk, 0.033);
    const cplx tm = theta(table, pk, -0.033);
    CHECK(std::abs(tm - std::conj(tp)) <= 1e-15);

    // Ten packet widths out, theta has saturated to the reflected weight.
    CHECK(std::abs(theta(table, pk, 0.2)) == doctest::Approx(0.940753).epsilon(1e-4));
    CHECK(std::abs(theta(table, pk, 0.2)) < 1.0);
}

TEST_CASE("collision function magnitudes against reference values") {
    const LightPacket base{0.2, 0.02, 250.0};

    // Off-diagonal suppression grows with the packet momentum...
    const std::vector<std::pair<double, double>> by_p = {
        {125.0, 0.015956}, {250.0, 0.059250}, {350.0, 0.109413}};
    double prev = 0.0;
    for (const auto& [p, want] : by_p) {
        LightPacket pk = base;
        pk.p = p;
        const AmplitudeTable t = delta_table(1000.0, pk);
        const double got = std::abs(collision_function(t, pk, 0.05, -0.05));
        CHECK(got == doctest::Approx(want).epsilon(1e-4));
        CHECK(got > prev);
        prev = got;
    }

    // ...and falls as the coupling gets stronger (reflection saturates).
    const std::vector<std::pair<double, double>> by_alpha = {
        {250.0, 0.497540}, {1000.0, 0.059250}, {4000.0, 0.003933}};
    prev = 1.0;
    for (const auto& [alpha, want] : by_alpha) {
        const AmplitudeTable t = delta_table(alpha, base);
        const double got = std::abs(collision_function(t, base, 0.05, -0.05));
        CHECK(got == doctest::Approx(want).epsilon(1e-4));
        CHECK(got < prev);
        prev = got;
    }
}

TEST_CASE("gamma: even in X for a packet centered at the origin") {
    const LightPacket pk{0.0, 0.02, 0.0};
    const AmplitudeTable table = delta_table(10.0, pk);
    const double gp = gamma_fn(table, pk, 0.05);
    const double gm = gamma_fn(table, pk, -0.05);
    CHECK(gp == doctest::Approx(gm).epsilon(1e-14));
    CHECK(std::abs(gp) > 0.0);
}

TEST_CASE("kernel: fast assembly equals the entrywise reference") {
    const LightPacket pk{0.2, 0.02, 250.0};
    const AmplitudeTable table = delta_table(1000.0, pk, 512);
    const GridSpec grid{0.1, 51};
    const CollisionKernel fast = build_collision_kernel(table, pk, grid);
    const CollisionKernel ref = build_collision_kernel_reference(table, pk, grid);
    REQUIRE(fast.values.size() == ref.values.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < fast.values.size(); ++i) {
        worst = std::max(worst, std::abs(fast.values[i] - ref.values[i]));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("kernel: exact unit diagonal, Hermitian, bounded by one") {
    const LightPacket pk{0.2, 0.02, 250.0};
    const AmplitudeTable table = delta_table(1000.0, pk, 512);
    const GridSpec grid{0.1, 51};
    const CollisionKernel ker = build_collision_kernel(table, pk, grid);
    CHECK_NOTHROW(ker.check_invariants());
    for (std::size_t i = 0; i < grid.J; ++i) CHECK(ker.at(i, i) == cplx(1.0));
    double herm = 0.0;
    double peak = 0.0;
    for (std::size_t i = 0; i < grid.J; ++i) {
        for (std::size_t j = 0; j < grid.J; ++j) {
            herm = std::max(herm, std::abs(ker.at(i, j) - std::conj(ker.at(j, i))));
            peak = std::max(peak, std::abs(ker.at(i, j)));
        }
    }
    CHECK(herm <= 1e-15);
    CHECK(peak <= 1.0 + tol_kernel);
}

TEST_CASE("kernel at zero coupling is identically one") {
    const LightPacket pk{0.0, 0.02, 0.0};
    const AmplitudeTable table = delta_table(0.0, pk, 256);
    const GridSpec grid{0.1, 21};
    const CollisionKernel ker = build_collision_kernel(table, pk, grid);
    for (const cplx& v : ker.values) CHECK(v == cplx(1.0));
}

TEST_CASE("apply_collision preserves trace, Hermiticity and the diagonal") {
    const GridSpec grid{0.1, 51};
    const HeavyStateSpec heavy{0.05, 0.01, 340.0};
    const DensityMatrix rho = pure_density(heavy_wavefunction(heavy, grid), grid);
    const LightPacket pk{0.2, 0.02, 250.0};
    const CollisionKernel ker =
        build_collision_kernel(delta_table(1000.0, pk, 512), pk, grid);

    const DensityMatrix out = apply_collision(rho, ker);
    CHECK(out.trace() == doctest::Approx(rho.trace()).epsilon(1e-13));
    CHECK(out.herm_defect() <= 1e-13);
    for (std::size_t j = 0; j < grid.J; ++j) CHECK(out.at(j, j) == rho.at(j, j));

    // Off-diagonal coherence must actually decay.
    const std::size_t i = grid.J / 4;
    const std::size_t j = 3 * grid.J / 4;
    CHECK(std::abs(out.at(i, j)) < std::abs(rho.at(i, j)));

    const DensityMatrix other{GridSpec{0.1, 21}};
    CHECK_THROWS_AS(apply_collision(other, ker), invariant_violation);
}

TEST_CASE("mixture model: unit trace and Hermitian") {
    const GridSpec grid{0.1, 201};
    const HeavyStateSpec heavy{0.05, 0.01, 340.0};
    const DensityMatrix rho0 = pure_density(heavy_wavefunction(heavy, grid), grid);
    const Amplitudes ap = delta_amplitudes(1000.0, 250.0);
    const DensityMatrix mix = mixture_approx(rho0, ap.r, ap.t, 250.0, heavy);
    CHECK(mix.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mix.herm_defect() <= 1e-13);
}

TEST_CASE("closed-form theta approximation endpoints") {
    const double rp2 = 0.941176;
    CHECK(theta_gaussian_approx(rp2, 0.02, 250.0, 0.0) == cplx(0.0));
    CHECK(std::abs(theta_gaussian_approx(rp2, 0.02, 250.0, 1.0) - rp2) <= 1e-12);
    CHECK_THROWS_AS(theta_gaussian_approx(rp2, 0.0, 250.0, 0.1), config_error);
}

TEST_CASE("quadrature ladder settles quickly for the reference packet") {
    const PotentialSpec pot{DeltaPotential{1000.0}};
    const LightPacket pk{0.2, 0.02, 250.0};
    const std::size_t nk = quadrature_self_check(pot, pk, 0.1, 0.05);
    CHECK(nk >= 64);
    CHECK(nk <= 256);
}

TEST_CASE("momentum window must cover the packet") {
    // A window sized for a wide position-space packet (K = 10) truncates a
    // sigma = 0.02 packet whose weight at the window edge is still O(1).
    const MomentumGrid narrow = momentum_grid_for(LightPacket{0.0, 0.5, 0.0}, 128);
    const AmplitudeTable table =
        build_amplitude_table(PotentialSpec{DeltaPotential{1000.0}}, narrow);
    const LightPacket sharp{0.0, 0.02, 0.0};
    CHECK_THROWS_AS(theta(table, sharp, 0.1), config_error);
}
