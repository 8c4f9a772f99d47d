#include "sim/absorption.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "sim/constants.hpp"
#include "sim/errors.hpp"

namespace sim {

namespace {

constexpr double c0 = constants::speed_of_light;
using cplx = std::complex<double>;

// 1 - e^{-z} without cancellation for small |z|.
cplx one_minus_exp_neg(const cplx& z) {
    if (std::abs(z) < 1e-6)
        return z * (1.0 - z / 2.0 * (1.0 - z / 3.0 * (1.0 - z / 4.0)));
    return 1.0 - std::exp(-z);
}

ClampedProbability clamp_probability(double p) {
    if (p < 0.0) return {0.0, true};
    if (p > 1.0) return {1.0, true};
    return {p, false};
}

// Axis weights of the dipole pattern deficit: 1 along the dipole axis (z),
// 2 transverse.
constexpr double axis_weight[3] = {2.0, 2.0, 1.0};

} // namespace

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::strong_slow: return "strong-slow";
        case Regime::strong_fast: return "strong-fast";
        case Regime::weak_instantaneous: return "weak-instantaneous";
        default: return "combined";
    }
}

RegimeDiagnostic regime_diagnostic(const CoMState& state, const TrapSpec& trap,
                                   const AtomSpec& atom, double gamma) {
    RegimeDiagnostic d{};
    for (int j = 0; j < 3; ++j) {
        // worst-phase variance over the oscillation period
        const AxisMoments& m = state.axis(j);
        const double var =
            constants::hbar / (2.0 * atom.mass * trap.omega(j)) *
            (2.0 * m.occupancy + 1.0 + 2.0 * std::abs(m.pair_moment));
        d.eta[j] = atom.omega_eg * std::sqrt(var) / c0;
        d.gamma_over_omega[j] = gamma / trap.omega(j);
    }
    d.doppler = doppler_ratio(state, atom, trap);
    return d;
}

double p_ideal(double t, double gamma, const PulseSpec& pulse) {
    if (t < pulse.t0)
        throw std::domain_error("p_ideal: t earlier than pulse preparation t0");
    const double tau = pulse.tau(t);
    const double rise = -std::expm1(-gamma * (tau - pulse.t0));
    return std::exp(-gamma * std::abs(pulse.t_out - t)) * rise * rise;
}

double a_coeff(const AxisMoments& axis_state, double omega_j, double gamma,
               double dt) {
    if (!(dt > 0.0)) throw std::domain_error("a_coeff: dt must be > 0");
    const cplx pair_dag = std::conj(axis_state.pair_moment); // <b†²>
    const cplx i2w(0.0, 2.0 * omega_j);
    const cplx rot = std::exp(i2w * dt);
    const cplx num = one_minus_exp_neg((gamma + i2w) * dt);
    const cplx den = one_minus_exp_neg(cplx(gamma * dt, 0.0));
    const cplx term = pair_dag * gamma * rot / (gamma + i2w) * num / den;
    return 2.0 * std::real(term) + 2.0 * axis_state.occupancy + 1.0;
}

double a_instantaneous(const AxisMoments& axis_state, double omega_j, double dt) {
    if (dt < 0.0) throw std::domain_error("a_instantaneous: dt must be >= 0");
    const cplx rot = std::exp(cplx(0.0, 2.0 * omega_j * dt));
    return 2.0 * std::real(std::conj(axis_state.pair_moment) * rot) +
           2.0 * axis_state.occupancy + 1.0;
}

ExcitationResult strong_ratio(const CoMState& state, const TrapSpec& trap,
                              const AtomSpec& atom, double gamma, double t,
                              const PulseSpec& pulse) {
    const RegimeDiagnostic diag = regime_diagnostic(state, trap, atom, gamma);
    for (int j = 0; j < 3; ++j) {
        if (diag.eta[j] >= 0.3)
            throw regime_error(
                "strong_ratio: per-axis eta >= 0.3, use the weak-confinement "
                "formulas instead");
    }

    const double dt = pulse.tau(t) - pulse.t0;
    const double omega_max =
        std::max({trap.omega_x, trap.omega_y, trap.omega_z});
    ExcitationResult res;
    res.regime_tag =
        gamma >= omega_max ? Regime::strong_fast : Regime::strong_slow;
    res.p_id = p_ideal(t, gamma, pulse);
    if (dt == 0.0) {
        // no interaction window yet; A_j continues to its dt->0 limit
        double deficit = 0.0;
        for (int j = 0; j < 3; ++j)
            deficit += axis_weight[j] * constants::hbar *
                       a_instantaneous(state.axis(j), trap.omega(j), 0.0) /
                       (2.0 * atom.mass * trap.omega(j));
        res.ratio = 1.0 - atom.omega_eg * atom.omega_eg / (5.0 * c0 * c0) * deficit;
        res.p_e = 0.0;
        return res;
    }

    double deficit = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double wj = trap.omega(j);
        const double a = a_coeff(state.axis(j), wj, gamma, dt);
        deficit += axis_weight[j] * constants::hbar * a / (2.0 * atom.mass * wj);
    }
    res.ratio = 1.0 - atom.omega_eg * atom.omega_eg / (5.0 * c0 * c0) * deficit;
    res.p_e = res.ratio * res.p_id;
    return res;
}

double strong_ratio_energy_limit(const std::array<double, 3>& mean_energies,
                                 const TrapSpec& trap, const AtomSpec& atom) {
    double deficit = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double wj = trap.omega(j);
        deficit += axis_weight[j] * mean_energies[j] / (atom.mass * wj * wj);
    }
    return 1.0 - atom.omega_eg * atom.omega_eg / (5.0 * c0 * c0) * deficit;
}

double squeezed_ratio_strong(double r_x, double r_y, double r_z,
                             const TrapSpec& trap, const AtomSpec& atom) {
    if (r_x < 0.0 || r_y < 0.0 || r_z < 0.0)
        throw std::domain_error("squeezed_ratio_strong: r_j must be >= 0");
    const double r[3] = {r_x, r_y, r_z};
    double deficit = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double extent = ground_extent(atom.mass, trap.omega(j));
        deficit += axis_weight[j] * extent * extent * std::exp(-2.0 * r[j]);
    }
    return 1.0 - atom.omega_eg * atom.omega_eg / (5.0 * c0 * c0) * deficit;
}

double weak_ratio_gaussian(double eta0) {
    if (eta0 < 0.0)
        throw std::domain_error("weak_ratio_gaussian: eta0 must be >= 0");
    const double x = eta0 * eta0;
    if (eta0 < 0.1) {
        // The closed form loses ~eps/eta0^6 absolute accuracy to cancellation,
        // so small arguments go through the series.
        return 1.0 - x +
               x * x * (17.0 / 25.0 +
                        x * (-26.0 / 75.0 + x * (74.0 / 525.0 - x / 21.0)));
    }
    const double e2x = std::exp(2.0 * x);
    const double bracket =
        -2.0 * x * x - x + (2.0 * x * x - x + 1.0) * e2x - 1.0;
    return 3.0 / (10.0 * x * x * x * e2x) * bracket;
}

std::vector<std::pair<double, double>> p_trace(const std::vector<double>& time_grid,
                                               double eta0, double gamma,
                                               const PulseSpec& pulse) {
    const double ratio = weak_ratio_gaussian(eta0);
    std::vector<std::pair<double, double>> out;
    out.reserve(time_grid.size());
    for (const double t : time_grid)
        out.emplace_back(t, ratio * p_ideal(t, gamma, pulse));
    return out;
}

ClampedProbability p_squeezed_aniso(const SecondMoments& state_at_tout,
                                    const TrapSpec& trap, const AtomSpec& atom,
                                    double gamma) {
    const double g2 = gamma * gamma;
    const double m2 = atom.mass * atom.mass;
    double momentum_term = 0.0, position_corr = 0.0, position_term = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double wj = trap.omega(j);
        momentum_term += axis_weight[j] * state_at_tout.momentum[j];
        position_corr += axis_weight[j] * wj * wj * state_at_tout.position[j];
        position_term += axis_weight[j] * state_at_tout.position[j];
    }
    const double bracket = 2.0 / (g2 * m2) * momentum_term -
                           2.0 / g2 * position_corr + position_term;
    const double p =
        1.0 - atom.omega_eg * atom.omega_eg / (5.0 * c0 * c0) * bracket;
    return clamp_probability(p);
}

ClampedProbability p_squeezed_iso(double x_param, double r,
                                  double omega_over_gamma) {
    if (x_param < 0.0 || r < 0.0)
        throw std::domain_error("p_squeezed_iso: x_param and r must be >= 0");
    const double q2 = omega_over_gamma * omega_over_gamma;
    const double p = 1.0 - x_param * ((1.0 - 2.0 * q2) * std::exp(-2.0 * r) +
                                      2.0 * q2 * std::exp(2.0 * r));
    return clamp_probability(p);
}

OptimalSqueeze optimal_squeeze(double gamma, double omega_T) {
    if (!(gamma > 0.0) || !(omega_T > 0.0))
        throw std::domain_error("optimal_squeeze: gamma and omega_T must be positive");
    const double arg = gamma / (std::sqrt(2.0) * omega_T);
    if (arg <= 1.0) return {0.0, false};
    return {0.5 * std::log(arg), true};
}

} // namespace sim
