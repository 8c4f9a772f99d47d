#include "sim/gaussian_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sim/constants.hpp"
#include "sim/errors.hpp"

namespace sim {

namespace {

void check_physical(const AxisMoments& m) {
    if (m.occupancy < 0.0)
        throw std::domain_error("CoMState: occupancy must be >= 0");
    const double bound = std::sqrt(m.occupancy * (m.occupancy + 1.0));
    if (std::abs(m.pair_moment) > bound * (1.0 + 1e-12) + 1e-300)
        throw std::domain_error(
            "CoMState: |<b²>| exceeds sqrt(<b†b>(<b†b>+1)), unphysical moments");
}

AxisMoments squeezed_axis(double r, double phi, double nbar) {
    if (r < 0.0)
        throw std::domain_error("CoMState: squeezing amplitude r must be >= 0");
    if (nbar < 0.0)
        throw std::domain_error("CoMState: nbar must be >= 0");
    const double ch = std::cosh(r), sh = std::sinh(r);
    AxisMoments m;
    m.occupancy = nbar * std::cosh(2.0 * r) + sh * sh;
    m.pair_moment = -(2.0 * nbar + 1.0) * sh * ch *
                    std::exp(std::complex<double>(0.0, 2.0 * phi));
    return m;
}

} // namespace

CoMState::CoMState(const AxisMoments& x, const AxisMoments& y,
                   const AxisMoments& z, bool gaussian)
    : moments_{x, y, z}, gaussian_(gaussian) {
    for (const auto& m : moments_) check_physical(m);
}

CoMState CoMState::ground() { return CoMState({}, {}, {}, true); }

CoMState CoMState::thermal(double nbar) { return thermal(nbar, nbar, nbar); }

CoMState CoMState::thermal(double nx, double ny, double nz) {
    return CoMState({nx, {}}, {ny, {}}, {nz, {}}, true);
}

CoMState CoMState::squeezed(double r, double phi) {
    return squeezed({r, r, r}, {phi, phi, phi});
}

CoMState CoMState::squeezed(const std::array<double, 3>& r,
                            const std::array<double, 3>& phi) {
    return CoMState(squeezed_axis(r[0], phi[0], 0.0),
                    squeezed_axis(r[1], phi[1], 0.0),
                    squeezed_axis(r[2], phi[2], 0.0), true);
}

CoMState CoMState::squeezed_thermal(double r, double phi, double nbar) {
    const AxisMoments m = squeezed_axis(r, phi, nbar);
    return CoMState(m, m, m, true);
}

CoMState CoMState::coherent(std::complex<double> alpha) {
    AxisMoments m;
    m.occupancy = std::norm(alpha);
    m.pair_moment = alpha * alpha;
    // Displaced unless alpha = 0, so the zero-mean Gaussian machinery
    // (weak-confinement closed form, mc_weak) must not be applied.
    return CoMState(m, m, m, alpha == std::complex<double>(0.0, 0.0));
}

bool CoMState::is_isotropic() const {
    for (int j = 0; j < 2; ++j) {
        if (std::abs(moments_[j].occupancy - moments_[2].occupancy) >
            1e-12 * (1.0 + moments_[2].occupancy))
            return false;
        if (std::abs(moments_[j].pair_moment - moments_[2].pair_moment) >
            1e-12 * (1.0 + std::abs(moments_[2].pair_moment)))
            return false;
    }
    return true;
}

ModulationSpec::ModulationSpec(double delta_, double omega_M_, double t0_)
    : delta(delta_), omega_M(omega_M_), t0(t0_) {
    if (!(std::abs(delta) < 1.0))
        throw std::domain_error("ModulationSpec: |delta| must be < 1");
    if (!(omega_M > 0.0))
        throw std::domain_error("ModulationSpec: omega_M must be positive");
}

TransferMatrix compose(const TransferMatrix& b, const TransferMatrix& a) {
    TransferMatrix m;
    m.m11 = b.m11 * a.m11 + b.m12 * a.m21;
    m.m12 = b.m11 * a.m12 + b.m12 * a.m22;
    m.m21 = b.m21 * a.m11 + b.m22 * a.m21;
    m.m22 = b.m21 * a.m12 + b.m22 * a.m22;
    m.t0 = a.t0;
    m.t = b.t;
    return m;
}

double free_moment(const AxisMoments& axis_state, double omega, double mass,
                   double dt) {
    if (dt < 0.0) throw std::domain_error("free_moment: dt must be >= 0");
    // x_I(t) = Delta (b e^{-iw dt} + b† e^{+iw dt}), Delta² = hbar/(2mw)
    const double delta2 = constants::hbar / (2.0 * mass * omega);
    const std::complex<double> rot =
        std::exp(std::complex<double>(0.0, -2.0 * omega * dt));
    return delta2 * (2.0 * std::real(axis_state.pair_moment * rot) +
                     2.0 * axis_state.occupancy + 1.0);
}

namespace {

// State of the two fundamental solutions, columns of the transfer matrix:
// y = (X1, P1, X2, P2) with X' = w_T P, P' = -(w²(t)/w_T) X.
struct MathieuSystem {
    double omega_T, omega_T2, delta, omega_M, t_ref;

    std::array<double, 4> rhs(double t, const std::array<double, 4>& y) const {
        const double w2 =
            omega_T2 * (1.0 + delta * std::sin(omega_M * (t - t_ref)));
        const double k = w2 / omega_T;
        return {omega_T * y[1], -k * y[0], omega_T * y[3], -k * y[2]};
    }
};

std::array<double, 4> rk4_step(const MathieuSystem& sys, double t,
                               const std::array<double, 4>& y, double h) {
    const auto k1 = sys.rhs(t, y);
    std::array<double, 4> tmp;
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    const auto k2 = sys.rhs(t + 0.5 * h, tmp);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    const auto k3 = sys.rhs(t + 0.5 * h, tmp);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + h * k3[i];
    const auto k4 = sys.rhs(t + h, tmp);
    std::array<double, 4> out;
    for (int i = 0; i < 4; ++i)
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

TransferMatrix integrate_mathieu(const ModulationSpec& mod, double omega_T,
                                 double t_from, double t_to, double tol) {
    if (!(omega_T > 0.0))
        throw std::domain_error("mathieu_transfer: omega_T must be positive");
    if (t_to < t_from)
        throw std::domain_error("mathieu_transfer: t must be >= start time");
    if (!(tol >= 1e-12 && tol <= 1e-4))
        throw std::domain_error("mathieu_transfer: tol outside [1e-12, 1e-4]");

    TransferMatrix m;
    m.t0 = t_from;
    m.t = t_to;
    const double span = t_to - t_from;
    if (span == 0.0) return m;

    const MathieuSystem sys{omega_T, omega_T * omega_T, mod.delta, mod.omega_M,
                            mod.t0};
    std::array<double, 4> y = {1.0, 0.0, 0.0, 1.0};
    double t = t_from;
    double h = std::min(span, 0.1 / omega_T);
    const double h_min = span * 1e-14;
    // Budget the local error per unit time so the accumulated error over the
    // whole span stays of order tol.
    const double err_rate = tol / span;

    while (t < t_to) {
        if (h < h_min)
            throw accuracy_error("mathieu_transfer: step size underflow", 0.0);
        if (t + h > t_to) h = t_to - t;

        const auto full = rk4_step(sys, t, y, h);
        auto half = rk4_step(sys, t, y, 0.5 * h);
        half = rk4_step(sys, t + 0.5 * h, half, 0.5 * h);

        double err = 0.0, scale = 1.0;
        for (int i = 0; i < 4; ++i) {
            err = std::max(err, std::abs(full[i] - half[i]) / 15.0);
            scale = std::max(scale, std::abs(half[i]));
        }
        const double budget = err_rate * h * scale;

        if (err <= budget || h <= h_min * 2.0) {
            // Local extrapolation: the two half steps are already 5th order.
            for (int i = 0; i < 4; ++i)
                y[i] = half[i] + (half[i] - full[i]) / 15.0;
            t += h;
            const double grow = err > 0.0
                                    ? 0.9 * std::pow(budget / err, 0.2)
                                    : 2.0;
            h *= std::min(2.0, std::max(0.5, grow));
        } else {
            h *= std::max(0.1, 0.9 * std::pow(budget / err, 0.25));
        }
    }

    m.m11 = y[0];
    m.m21 = y[1];
    m.m12 = y[2];
    m.m22 = y[3];
    if (std::abs(m.determinant() - 1.0) > 10.0 * tol)
        throw accuracy_error("mathieu_transfer: symplectic drift exceeds budget",
                             m.determinant());
    return m;
}

} // namespace

TransferMatrix mathieu_transfer(const ModulationSpec& mod, double omega_T,
                                double t, double tol) {
    return integrate_mathieu(mod, omega_T, mod.t0, t, tol);
}

TransferMatrix mathieu_transfer_segment(const ModulationSpec& mod,
                                        double omega_T, double t_from,
                                        double t_to, double tol) {
    return integrate_mathieu(mod, omega_T, t_from, t_to, tol);
}

FloquetResult floquet_classify(const ModulationSpec& mod, double omega_T,
                               double tol) {
    const double period = constants::two_pi / mod.omega_M;
    const TransferMatrix m =
        mathieu_transfer(mod, omega_T, mod.t0 + period, tol);
    const double tr = std::abs(m.trace());
    return FloquetResult{tr > 2.0, tr};
}

SqueezeParams squeeze_from_transfer(const TransferMatrix& m) {
    if (std::abs(m.determinant() - 1.0) > 1e-6)
        throw std::domain_error("squeeze_from_transfer: matrix is not symplectic");
    // Covariance of the propagated ground state: C = M (1/2 I) M^T.
    const double c11 = 0.5 * (m.m11 * m.m11 + m.m12 * m.m12);
    const double c22 = 0.5 * (m.m21 * m.m21 + m.m22 * m.m22);
    const double c12 = 0.5 * (m.m11 * m.m21 + m.m12 * m.m22);

    const double mean = 0.5 * (c11 + c22);
    const double dev = std::sqrt(0.25 * (c11 - c22) * (c11 - c22) + c12 * c12);
    const double lam_max = mean + dev;

    SqueezeParams sq;
    sq.r = 0.5 * std::log(2.0 * lam_max);
    if (sq.r < 1e-12) {
        sq.r = std::max(sq.r, 0.0);
        sq.phi = 0.0;
        return sq;
    }
    // Major-axis angle alpha of the covariance ellipse; position variance
    // c11 = lam_max cos²alpha + lam_min sin²alpha, which matches
    // modulated_variance with phi = pi/2 - alpha.
    const double alpha = 0.5 * std::atan2(2.0 * c12, c11 - c22);
    double phi = constants::pi / 2.0 - alpha;
    if (phi > constants::pi) phi -= constants::two_pi;
    sq.phi = phi;
    return sq;
}

SqueezeParams squeeze_approx(double delta, double omega_T, double dt) {
    if (dt < 0.0) throw std::domain_error("squeeze_approx: dt must be >= 0");
    SqueezeParams sq;
    sq.r = omega_T * delta * dt / 4.0;
    double phi = omega_T * dt - constants::pi / 2.0;
    phi = std::remainder(phi, constants::two_pi);
    if (phi <= -constants::pi) phi += constants::two_pi;
    sq.phi = phi;
    return sq;
}

double modulated_variance(double mean_energy, double mass, double omega_T,
                          const SqueezeParams& sq) {
    if (mean_energy < 0.0)
        throw std::domain_error("modulated_variance: mean_energy must be >= 0");
    const double c = std::cos(sq.phi), s = std::sin(sq.phi);
    return mean_energy / (mass * omega_T * omega_T) *
           (std::exp(-2.0 * sq.r) * c * c + std::exp(2.0 * sq.r) * s * s);
}

double thermal_energy(double omega_T, double temperature) {
    if (temperature < 0.0)
        throw std::domain_error("thermal_energy: temperature must be >= 0");
    const double zero_point = 1.5 * constants::hbar * omega_T;
    if (temperature == 0.0) return zero_point;
    const double x = constants::hbar * omega_T / (constants::boltzmann * temperature);
    return zero_point + 3.0 * constants::hbar * omega_T / std::expm1(x);
}

} // namespace sim
