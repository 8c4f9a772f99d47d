#pragma once

#include <array>

#include "sim/gaussian_dynamics.hpp"

namespace sim {

// Electronic transition of the trapped two-level system plus center-of-mass
// mass. Frequencies in rad/s, SI units throughout.
struct AtomSpec {
    // Validity of the rotating-wave treatment requires omega_eg/gamma >= 1e3.
    AtomSpec(double omega_eg, double gamma, double mass,
             const std::array<double, 3>& dipole_axis = {0.0, 0.0, 1.0});

    double omega_eg;      // rad/s
    double gamma;         // 1/s, spontaneous decay rate
    double mass;          // kg
    std::array<double, 3> dipole_axis; // unit vector, conventionally e_z
    double wavelength_eg; // m, derived: 2 pi c / omega_eg
};

// Static harmonic trap frequencies per Cartesian axis.
struct TrapSpec {
    TrapSpec(double omega_x, double omega_y, double omega_z);
    explicit TrapSpec(double omega_T) : TrapSpec(omega_T, omega_T, omega_T) {}

    double omega_x, omega_y, omega_z; // rad/s
    double omega(int j) const { return j == 0 ? omega_x : (j == 1 ? omega_y : omega_z); }
    bool isotropic() const; // all equal within relative 1e-12
};

// Timing of the optimal single-photon wavepacket: prepared at t0, peak
// excitation at t_out.
struct PulseSpec {
    PulseSpec(double t0, double t_out);

    double t0;    // s
    double t_out; // s
    // tau = min(t, t_out), the effective interaction end time.
    double tau(double t) const { return t < t_out ? t : t_out; }
    // Gamma (t_out - t0) >= 10 marks the regime where the residual
    // excitation deficit is exponentially negligible.
    bool large_interaction_time(double gamma) const {
        return gamma * (t_out - t0) >= 10.0;
    }
};

// Free-space decay rate Gamma = w³ d² / (3 pi eps0 hbar c³).
double spontaneous_rate(double dipole_magnitude, double omega_eg);

// Ground-state extent sqrt(hbar / (2 m w)) of one axis.
double ground_extent(double mass, double omega);

// Effective Lamb-Dicke parameter eta0 = (w_eg/c) sqrt(variance_3d / 3) of an
// isotropic Gaussian center-of-mass state with total position variance
// variance_3d = <x²+y²+z²>.
double effective_lamb_dicke(double variance_3d, double omega_eg);

struct DopplerRatio {
    double value = 0.0;               // max over axes of dv / (lambda Gamma)
    bool instantaneous_valid = false; // value < 0.01
};

// Velocity-spread ratio dv/(lambda_eg Gamma) with dv = sqrt(<H_j>/m) per
// axis, <H_j> = hbar w_j (<b†b> + 1/2). Small values mean the photon is
// absorbed before the atom moves appreciably (negligible Doppler shift).
DopplerRatio doppler_ratio(const CoMState& state, const AtomSpec& atom,
                           const TrapSpec& trap);

// Thermal occupation nbar at the Doppler limit kB T_D = hbar Gamma / 2,
// defined through the classical per-axis energy <H_j> = kB T_D.
double doppler_nbar(double gamma, double omega_T);

} // namespace sim
