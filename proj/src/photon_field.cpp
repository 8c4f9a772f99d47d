#include "sim/photon_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sim/constants.hpp"
#include "sim/errors.hpp"

namespace sim {

namespace {

constexpr double c0 = constants::speed_of_light;
using cplx = std::complex<double>;

// f(u) = sin(u)/u³ - cos(u)/u² = j1(u)/u and sinc(u) = sin(u)/u, both entire;
// series below |u| = 1e-2 to avoid cancellation.
template <typename T>
T f_pattern(const T& u) {
    if (std::abs(u) < 1e-2) {
        const T u2 = u * u;
        return 1.0 / 3.0 - u2 / 30.0 + u2 * u2 / 840.0 -
               u2 * u2 * u2 / 45360.0;
    }
    return std::sin(u) / (u * u * u) - std::cos(u) / (u * u);
}

template <typename T>
T sinc(const T& u) {
    if (std::abs(u) < 1e-2) {
        const T u2 = u * u;
        return 1.0 - u2 / 6.0 + u2 * u2 / 120.0 - u2 * u2 * u2 / 5040.0;
    }
    return std::sin(u) / u;
}

struct Frame {
    double r = 0.0;
    double cos_theta = 1.0, sin_theta = 0.0;
    std::array<double, 3> e_r{0.0, 0.0, 1.0};
    std::array<double, 3> e_theta{1.0, 0.0, 0.0};
};

// Spherical frame of the evaluation point relative to the dipole axis.
Frame make_frame(const std::array<double, 3>& x, const AtomSpec& atom) {
    Frame fr;
    fr.r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (fr.r == 0.0) return fr;
    for (int i = 0; i < 3; ++i) fr.e_r[i] = x[i] / fr.r;
    double ct = 0.0;
    for (int i = 0; i < 3; ++i) ct += fr.e_r[i] * atom.dipole_axis[i];
    ct = std::min(1.0, std::max(-1.0, ct));
    fr.cos_theta = ct;
    fr.sin_theta = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    if (fr.sin_theta > 1e-15) {
        // e_theta = (cos(theta) e_r - d) / sin(theta); e_theta · d = -sin(theta)
        for (int i = 0; i < 3; ++i)
            fr.e_theta[i] = (ct * fr.e_r[i] - atom.dipole_axis[i]) / fr.sin_theta;
    } else {
        for (int i = 0; i < 3; ++i) fr.e_theta[i] = 0.0;
    }
    return fr;
}

// Two-branch spatial sum S(u) = g^(+) e^{iu} + g^(-) e^{-iu} in spherical
// components; regular at u = 0 where it tends to (2/3) e_z.
void two_branch_sum(const cplx& u, const Frame& fr, cplx& s_r, cplx& s_theta) {
    const cplx f = f_pattern(u);
    const cplx sc = sinc(u);
    s_r = 2.0 * fr.cos_theta * f;
    s_theta = -fr.sin_theta * (sc - f);
}

PhotonAmplitude assemble(const Frame& fr, const cplx& s_r, const cplx& s_theta,
                         const cplx& scale, double t_plus, double t_minus) {
    PhotonAmplitude out;
    out.t_plus = t_plus;
    out.t_minus = t_minus;
    for (int i = 0; i < 3; ++i)
        out.vector[i] = scale * (s_r * fr.e_r[i] + s_theta * fr.e_theta[i]);
    return out;
}

} // namespace

PatternVector dipole_pattern(cplx u, double theta, Branch branch) {
    if (u == cplx(0.0, 0.0))
        throw std::domain_error(
            "dipole_pattern: singular at u = 0, use the near-origin series");
    const double sign = branch == Branch::plus ? 1.0 : -1.0;
    const cplx i_s(0.0, sign);
    const cplx inv_u = 1.0 / u;
    const cplx inv_u2 = inv_u * inv_u;
    const cplx inv_u3 = inv_u2 * inv_u;

    PatternVector g;
    g.u = u;
    g.theta = theta;
    g.component_r = -std::cos(theta) * (inv_u2 + i_s * inv_u3);
    g.component_theta =
        -0.5 * std::sin(theta) * (inv_u2 - i_s * (inv_u - inv_u3));
    return g;
}

PhotonAmplitude photon_amplitude(const std::array<double, 3>& x, double t,
                                 const AtomSpec& atom, const PulseSpec& pulse) {
    const Frame fr = make_frame(x, atom);
    if (atom.gamma * fr.r / c0 > 1e-3)
        throw regime_error(
            "photon_amplitude: Gamma |x| / c > 1e-3, retarded decay envelope "
            "not negligible");

    const cplx omega(atom.omega_eg, 0.5 * atom.gamma);
    const double t_plus = t - pulse.t_out - fr.r / c0;
    const double t_minus = t - pulse.t_out + fr.r / c0;
    const bool plus_on = t_plus <= 0.0;
    const bool minus_on = t_minus <= 0.0;

    PhotonAmplitude out;
    out.t_plus = t_plus;
    out.t_minus = t_minus;
    if (!plus_on && !minus_on) return out;

    if (fr.r == 0.0) {
        // Exact origin: amplitude along the dipole axis.
        const cplx phase = std::exp(cplx(0.0, -1.0) * omega * cplx(t - pulse.t_out));
        for (int i = 0; i < 3; ++i)
            out.vector[i] = phase * atom.dipole_axis[i];
        return out;
    }

    const cplx u = omega * fr.r / c0;
    if (plus_on && minus_on) {
        cplx s_r, s_theta;
        two_branch_sum(u, fr, s_r, s_theta);
        const cplx scale =
            1.5 * std::exp(cplx(0.0, -1.0) * omega * cplx(t - pulse.t_out));
        return assemble(fr, s_r, s_theta, scale, t_plus, t_minus);
    }

    // Light-cone shell t_out - r/c < t <= t_out + r/c: only the outgoing
    // branch remains.
    const PatternVector g = dipole_pattern(u, std::acos(fr.cos_theta), Branch::plus);
    const cplx scale = 1.5 * std::exp(cplx(0.0, -1.0) * omega * cplx(t_plus));
    return assemble(fr, g.component_r, g.component_theta, scale, t_plus, t_minus);
}

PhotonAmplitude photon_amplitude_near_origin(const std::array<double, 3>& x,
                                             double t, const AtomSpec& atom,
                                             const PulseSpec& pulse) {
    const Frame fr = make_frame(x, atom);
    const double eta = atom.omega_eg * fr.r / c0;
    if (eta >= 0.3)
        throw regime_error("photon_amplitude_near_origin: eta >= 0.3");

    PhotonAmplitude out;
    out.t_plus = t - pulse.t_out - fr.r / c0;
    out.t_minus = t - pulse.t_out + fr.r / c0;
    if (t > pulse.t_out) return out;

    const double dt = pulse.t_out - t;
    const cplx phase = std::exp(cplx(-0.5 * atom.gamma * dt, atom.omega_eg * dt));
    const double corr = eta * eta / 10.0;
    for (int i = 0; i < 3; ++i)
        out.vector[i] = phase * (atom.dipole_axis[i] * (1.0 - corr) +
                                 fr.e_theta[i] * fr.sin_theta * corr);
    return out;
}

PhotonAmplitude photon_amplitude_instantaneous(const std::array<double, 3>& x,
                                               double t, const AtomSpec& atom,
                                               const PulseSpec& pulse) {
    const Frame fr = make_frame(x, atom);
    if (atom.gamma * fr.r / c0 > 1e-3)
        throw regime_error(
            "photon_amplitude_instantaneous: Gamma |x| / c > 1e-3");

    PhotonAmplitude out;
    out.t_plus = t - pulse.t_out - fr.r / c0;
    out.t_minus = t - pulse.t_out + fr.r / c0;
    if (t > pulse.t_out) return out;

    const double dt = pulse.t_out - t;
    const cplx phase = std::exp(cplx(-0.5 * atom.gamma * dt, atom.omega_eg * dt));
    if (fr.r == 0.0) {
        for (int i = 0; i < 3; ++i) out.vector[i] = phase * atom.dipole_axis[i];
        return out;
    }
    const cplx u(atom.omega_eg * fr.r / c0, 0.0);
    cplx s_r, s_theta;
    two_branch_sum(u, fr, s_r, s_theta);
    return assemble(fr, s_r, s_theta, 1.5 * phase, out.t_plus, out.t_minus);
}

double axial_projection_two_branch(double u, double cos_theta) {
    const double f = f_pattern(u);
    const double sc = sinc(u);
    const double c2 = cos_theta * cos_theta;
    return f * (3.0 * c2 - 1.0) + (1.0 - c2) * sc;
}

double weak_integrand(double u, double cos_theta) {
    const double proj = axial_projection_two_branch(u, cos_theta);
    return 2.25 * proj * proj;
}

} // namespace sim
