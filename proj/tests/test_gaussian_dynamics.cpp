#include <doctest.h>

#include <cmath>

#include "fock_oracle.hpp"
#include "sim/constants.hpp"
#include "sim/errors.hpp"
#include "sim/gaussian_dynamics.hpp"

using namespace sim;

namespace {
const double mass = constants::yb174_mass;
const double omega = constants::two_pi * 480e3;
const double delta0_sq = constants::hbar / (2.0 * mass * omega);
} // namespace

TEST_CASE("CoMState factories and physicality") {
    const CoMState ground = CoMState::ground();
    CHECK(ground.axis(0).occupancy == 0.0);
    CHECK(std::abs(ground.axis(2).pair_moment) == 0.0);
    CHECK(ground.is_gaussian());
    CHECK(ground.is_isotropic());

    const CoMState thermal = CoMState::thermal(3.5);
    CHECK(thermal.axis(1).occupancy == 3.5);
    CHECK(std::abs(thermal.axis(1).pair_moment) == 0.0);

    const double r = 0.8, phi = 0.3;
    const CoMState squeezed = CoMState::squeezed(r, phi);
    CHECK(squeezed.axis(0).occupancy ==
          doctest::Approx(std::sinh(r) * std::sinh(r)).epsilon(1e-12));
    CHECK(std::abs(squeezed.axis(0).pair_moment) ==
          doctest::Approx(std::sinh(r) * std::cosh(r)).epsilon(1e-12));

    // cross-check squeezed moments against the number-basis construction
    const auto vec = fock::squeezed_vacuum(r, phi, 200);
    CHECK(fock::occupancy(vec) ==
          doctest::Approx(squeezed.axis(0).occupancy).epsilon(1e-10));
    CHECK(std::abs(fock::pair_moment(vec) - squeezed.axis(0).pair_moment) < 1e-10);

    // moments violating |<b²>| <= sqrt(n(n+1)) are rejected
    CHECK_THROWS_AS(CoMState({1.0, {2.0, 0.0}}, {}, {}, true), std::domain_error);
    CHECK_THROWS_AS(CoMState({-0.5, {}}, {}, {}, true), std::domain_error);
}

TEST_CASE("free_moment stationary states") {
    for (const double dt : {0.0, 0.3 / omega, 2.0 / omega, 50.0 / omega}) {
        CHECK(free_moment(CoMState::ground().axis(0), omega, mass, dt) ==
              doctest::Approx(delta0_sq).epsilon(1e-12));
        CHECK(free_moment(CoMState::thermal(4.0).axis(0), omega, mass, dt) ==
              doctest::Approx(9.0 * delta0_sq).epsilon(1e-12));
    }
    CHECK_THROWS_AS(free_moment(CoMState::ground().axis(0), omega, mass, -1.0),
                    std::domain_error);
}

TEST_CASE("free_moment of a squeezed state oscillates between e^{±2r}") {
    const double r = 1.0;
    const AxisMoments ax = CoMState::squeezed(r, 0.0).axis(0);

    CHECK(free_moment(ax, omega, mass, 0.0) ==
          doctest::Approx(std::exp(-2.0 * r) * delta0_sq).epsilon(1e-12));
    const double quarter = constants::pi / (2.0 * omega);
    CHECK(free_moment(ax, omega, mass, quarter) ==
          doctest::Approx(std::exp(2.0 * r) * delta0_sq).epsilon(1e-9));

    // periodic with half the oscillator period
    for (const double dt : {0.13 / omega, 0.71 / omega}) {
        CHECK(free_moment(ax, omega, mass, dt + constants::pi / omega) ==
              doctest::Approx(free_moment(ax, omega, mass, dt)).epsilon(1e-9));
    }

    // number-basis oracle at several phases
    for (const double wdt : {0.0, 0.4, 1.1, 2.0}) {
        const double want =
            delta0_sq * fock::converged(r, [&](std::size_t dim) {
                return fock::quadrature_sq(fock::squeezed_vacuum(r, 0.0, dim), wdt);
            });
        CHECK(free_moment(ax, omega, mass, wdt / omega) ==
              doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("mathieu_transfer limits") {
    const ModulationSpec none(0.0, 2.0 * omega, 0.0);

    const TransferMatrix identity = mathieu_transfer(none, omega, 0.0);
    CHECK(identity.m11 == 1.0);
    CHECK(identity.m12 == 0.0);

    // delta = 0 is a plain rotation by omega (t - t0)
    for (const double wt : {0.7, 2.0, 9.3}) {
        const TransferMatrix m = mathieu_transfer(none, omega, wt / omega, 1e-11);
        CHECK(m.m11 == doctest::Approx(std::cos(wt)).epsilon(1e-9));
        CHECK(m.m12 == doctest::Approx(std::sin(wt)).epsilon(1e-9));
        CHECK(m.m21 == doctest::Approx(-std::sin(wt)).epsilon(1e-9));
        CHECK(m.m22 == doctest::Approx(std::cos(wt)).epsilon(1e-9));
    }

    CHECK_THROWS_AS(mathieu_transfer(none, omega, 1.0, 1e-2), std::domain_error);
    CHECK_THROWS_AS(mathieu_transfer(none, omega, -1.0), std::domain_error);
}

TEST_CASE("mathieu_transfer symplectic and composition properties") {
    for (const double d : {0.0, 0.1, 0.5}) {
        for (const double wm_ratio : {1.5, 2.0, 2.2, 2.3, 3.0}) {
            const ModulationSpec mod(d, wm_ratio * omega, 0.0);
            const double t2 = 30.0 / omega, t1 = 11.0 / omega;
            const double tol = 1e-9;
            const TransferMatrix full = mathieu_transfer(mod, omega, t2, tol);
            CHECK(std::abs(full.determinant() - 1.0) <= 10.0 * tol);

            const TransferMatrix first = mathieu_transfer(mod, omega, t1, tol);
            const TransferMatrix second =
                mathieu_transfer_segment(mod, omega, t1, t2, tol);
            const TransferMatrix stitched = compose(second, first);
            const double scale = std::max({std::abs(full.m11), std::abs(full.m12),
                                           std::abs(full.m21), std::abs(full.m22)});
            CHECK(std::abs(stitched.m11 - full.m11) <= 100.0 * tol * scale);
            CHECK(std::abs(stitched.m12 - full.m12) <= 100.0 * tol * scale);
            CHECK(std::abs(stitched.m21 - full.m21) <= 100.0 * tol * scale);
            CHECK(std::abs(stitched.m22 - full.m22) <= 100.0 * tol * scale);

            // pure Gaussian stays pure: det C = 1/4
            const double c11 = 0.5 * (full.m11 * full.m11 + full.m12 * full.m12);
            const double c22 = 0.5 * (full.m21 * full.m21 + full.m22 * full.m22);
            const double c12 = 0.5 * (full.m11 * full.m21 + full.m12 * full.m22);
            CHECK(std::abs(c11 * c22 - c12 * c12 - 0.25) <= 10.0 * tol);
        }
    }
}

TEST_CASE("resonant modulation grows squeezing linearly") {
    // moderately strong drive: r = 1 after omega_T t = 8, within 10%
    const ModulationSpec strong(0.5, 2.0 * omega, 0.0);
    const double r8 =
        squeeze_from_transfer(mathieu_transfer(strong, omega, 8.0 / omega, 1e-10)).r;
    CHECK(r8 == doctest::Approx(1.0).epsilon(0.10));

    // weak drive tracks delta omega_T dt / 4; the exact solution carries a
    // counter-rotating micro-oscillation of relative size ~1/(4 w_T dt), so
    // the tolerance tightens with time
    const ModulationSpec weak(0.1, 2.0 * omega, 0.0);
    for (double wt = 4.0; wt <= 20.0; wt += 0.5) {
        const double r_num =
            squeeze_from_transfer(mathieu_transfer(weak, omega, wt / omega, 1e-10)).r;
        const double bound = 1.15 / (4.0 * wt) + 0.01;
        CHECK(std::abs(r_num / (0.1 * wt / 4.0) - 1.0) <= bound);
    }
    for (double wt = 6.0; wt <= 20.0; wt += 0.5) {
        const double r_num =
            squeeze_from_transfer(mathieu_transfer(weak, omega, wt / omega, 1e-10)).r;
        CHECK(r_num == doctest::Approx(0.1 * wt / 4.0).epsilon(0.05));
    }

    const SqueezeParams approx = squeeze_approx(0.5, omega, 8.0 / omega);
    CHECK(approx.r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r8 == doctest::Approx(approx.r).epsilon(0.10));
}

TEST_CASE("floquet_classify matches the stability chart") {
    // unmodulated: stable with |trace| = |2 cos(2 pi w_T / w_M)|
    for (const double ratio : {1.7, 2.1, 3.3}) {
        const ModulationSpec mod(0.0, ratio * omega, 0.0);
        const FloquetResult res = floquet_classify(mod, omega);
        CHECK_FALSE(res.unstable);
        CHECK(res.trace_magnitude ==
              doctest::Approx(std::abs(2.0 * std::cos(constants::two_pi / ratio)))
                  .epsilon(1e-7));
    }

    CHECK(floquet_classify(ModulationSpec(0.5, 2.0 * omega, 0.0), omega).unstable);
    CHECK(floquet_classify(ModulationSpec(0.5, 2.2 * omega, 0.0), omega).unstable);
    CHECK_FALSE(floquet_classify(ModulationSpec(0.5, 2.3 * omega, 0.0), omega).unstable);
}

TEST_CASE("squeeze_from_transfer conventions") {
    CHECK(squeeze_from_transfer(TransferMatrix{}).r == 0.0);

    const double s = 2.0;
    TransferMatrix diag;
    diag.m11 = s;
    diag.m22 = 1.0 / s;
    const SqueezeParams sq = squeeze_from_transfer(diag);
    CHECK(sq.r == doctest::Approx(std::log(s)).epsilon(1e-12));
    // position variance is anti-squeezed for s > 1
    const double var = modulated_variance(0.5 * constants::hbar * omega, mass, omega, sq);
    CHECK(var == doctest::Approx(std::exp(2.0 * sq.r) * delta0_sq).epsilon(1e-12));

    TransferMatrix bad;
    bad.m11 = 2.0;
    CHECK_THROWS_AS(squeeze_from_transfer(bad), std::domain_error);
}

TEST_CASE("squeeze extraction reproduces the propagated position variance") {
    // random-ish symplectic matrices R(a) diag(s, 1/s) R(b)
    const double angles_a[] = {0.0, 0.4, 2.2, -1.3};
    const double angles_b[] = {0.9, -0.5, 1.7, 3.0};
    const double scales[] = {1.0, 1.3, 2.7, 10.0};
    for (const double a : angles_a)
        for (const double b : angles_b)
            for (const double s : scales) {
                // M = R(a) diag(s, 1/s) R(b), det = 1
                TransferMatrix m;
                const double ca = std::cos(a), sa = std::sin(a);
                const double cb = std::cos(b), sb = std::sin(b);
                m.m11 = ca * s * cb - sa * sb / s;
                m.m12 = ca * s * sb + sa * cb / s;
                m.m21 = -sa * s * cb - ca * sb / s;
                m.m22 = -sa * s * sb + ca * cb / s;
                const SqueezeParams sq = squeeze_from_transfer(m);
                const double propagated =
                    0.5 * (m.m11 * m.m11 + m.m12 * m.m12) * 2.0 * delta0_sq;
                const double reconstructed =
                    modulated_variance(0.5 * constants::hbar * omega, mass, omega, sq);
                CHECK(reconstructed == doctest::Approx(propagated).epsilon(1e-10));
            }
}

TEST_CASE("squeeze_approx endpoints") {
    CHECK(squeeze_approx(0.0, omega, 5.0 / omega).r == 0.0);
    const SqueezeParams at_zero = squeeze_approx(0.3, omega, 0.0);
    CHECK(at_zero.r == 0.0);
    CHECK(at_zero.phi == doctest::Approx(-constants::pi / 2.0).epsilon(1e-12));
}

TEST_CASE("modulated_variance limiting cases") {
    const double energy = 1.5 * constants::hbar * omega; // 3D ground state
    CHECK(modulated_variance(energy, mass, omega, {0.0, 0.7}) ==
          doctest::Approx(3.0 * delta0_sq).epsilon(1e-12));
    CHECK(modulated_variance(energy, mass, omega, {1.2, 0.0}) ==
          doctest::Approx(3.0 * delta0_sq * std::exp(-2.4)).epsilon(1e-12));
    CHECK(modulated_variance(energy, mass, omega, {1.2, constants::pi / 2.0}) ==
          doctest::Approx(3.0 * delta0_sq * std::exp(2.4)).epsilon(1e-12));
}

TEST_CASE("thermal_energy") {
    CHECK(thermal_energy(omega, 0.0) ==
          doctest::Approx(1.5 * constants::hbar * omega).epsilon(1e-12));

    // equipartition: 3 kB T for kB T >> hbar w
    const double hot = 1e5 * constants::hbar * omega / constants::boltzmann;
    CHECK(thermal_energy(omega, hot) ==
          doctest::Approx(3.0 * constants::boltzmann * hot).epsilon(1e-4));

    // exact expression at hbar w / kB T = 1
    const double t1 = constants::hbar * omega / constants::boltzmann;
    CHECK(thermal_energy(omega, t1) ==
          doctest::Approx(3.0 * constants::hbar * omega *
                          (0.5 + 1.0 / (std::exp(1.0) - 1.0)))
              .epsilon(1e-12));

    CHECK_THROWS_AS(thermal_energy(omega, -1.0), std::domain_error);
}
