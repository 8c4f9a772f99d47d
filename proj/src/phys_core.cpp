#include "sim/phys_core.hpp"

#include <cmath>
#include <stdexcept>

#include "sim/constants.hpp"

namespace sim {

namespace {
constexpr double c0 = constants::speed_of_light;
}

AtomSpec::AtomSpec(double omega_eg_, double gamma_, double mass_,
                   const std::array<double, 3>& dipole_axis_)
    : omega_eg(omega_eg_), gamma(gamma_), mass(mass_), dipole_axis(dipole_axis_),
      wavelength_eg(constants::two_pi * c0 / omega_eg_) {
    if (!(omega_eg > 0.0) || !(gamma > 0.0) || !(mass > 0.0))
        throw std::domain_error("AtomSpec: omega_eg, gamma and mass must be positive");
    if (omega_eg / gamma < 1.0e3)
        throw std::domain_error(
            "AtomSpec: omega_eg/gamma < 1e3, rotating-wave treatment invalid");
    const double norm = std::sqrt(dipole_axis[0] * dipole_axis[0] +
                                  dipole_axis[1] * dipole_axis[1] +
                                  dipole_axis[2] * dipole_axis[2]);
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::domain_error("AtomSpec: dipole_axis must be a unit vector");
}

TrapSpec::TrapSpec(double omega_x_, double omega_y_, double omega_z_)
    : omega_x(omega_x_), omega_y(omega_y_), omega_z(omega_z_) {
    if (!(omega_x > 0.0) || !(omega_y > 0.0) || !(omega_z > 0.0))
        throw std::domain_error("TrapSpec: trap frequencies must be positive");
}

bool TrapSpec::isotropic() const {
    const double ref = omega_z;
    return std::abs(omega_x - ref) <= 1e-12 * ref &&
           std::abs(omega_y - ref) <= 1e-12 * ref;
}

PulseSpec::PulseSpec(double t0_, double t_out_) : t0(t0_), t_out(t_out_) {
    if (!(t_out > t0))
        throw std::domain_error("PulseSpec: t_out must be later than t0");
}

double spontaneous_rate(double dipole_magnitude, double omega_eg) {
    if (dipole_magnitude < 0.0 || omega_eg < 0.0)
        throw std::domain_error("spontaneous_rate: negative input");
    const double w3 = omega_eg * omega_eg * omega_eg;
    const double d2 = dipole_magnitude * dipole_magnitude;
    return w3 * d2 /
           (3.0 * constants::pi * constants::vacuum_permittivity *
            constants::hbar * c0 * c0 * c0);
}

double ground_extent(double mass, double omega) {
    if (!(mass > 0.0) || !(omega > 0.0))
        throw std::domain_error("ground_extent: mass and omega must be positive");
    return std::sqrt(constants::hbar / (2.0 * mass * omega));
}

double effective_lamb_dicke(double variance_3d, double omega_eg) {
    if (variance_3d < 0.0)
        throw std::domain_error("effective_lamb_dicke: negative variance");
    return omega_eg / c0 * std::sqrt(variance_3d / 3.0);
}

DopplerRatio doppler_ratio(const CoMState& state, const AtomSpec& atom,
                           const TrapSpec& trap) {
    double worst = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double energy =
            constants::hbar * trap.omega(j) * (state.axis(j).occupancy + 0.5);
        const double dv = std::sqrt(energy / atom.mass);
        worst = std::max(worst, dv / (atom.wavelength_eg * atom.gamma));
    }
    return DopplerRatio{worst, worst < 0.01};
}

double doppler_nbar(double gamma, double omega_T) {
    if (!(gamma > 0.0) || !(omega_T > 0.0))
        throw std::domain_error("doppler_nbar: gamma and omega_T must be positive");
    // hbar w (nbar + 1/2) = kB T_D = hbar Gamma / 2
    const double nbar = gamma / (2.0 * omega_T) - 0.5;
    if (nbar < 0.0)
        throw std::domain_error("doppler_nbar: Doppler energy below zero point");
    return nbar;
}

} // namespace sim
