#pragma once

#include <array>
#include <complex>

#include "sim/phys_core.hpp"

namespace sim {

enum class Branch { plus, minus };

// One dipole pattern function g^(±) evaluated at u = w r / c and polar angle
// theta (measured from the dipole axis), in spherical components.
struct PatternVector {
    std::complex<double> component_r;
    std::complex<double> component_theta;
    std::complex<double> u;
    double theta = 0.0;
};

// g^(+) = -e_r cos(theta) (1/u² + i/u³)
//         -e_theta sin(theta)/2 (1/u² - i(1/u - 1/u³));
// g^(-) replaces i by -i (complex conjugate for real u).
PatternVector dipole_pattern(std::complex<double> u, double theta, Branch branch);

// Dimensionless single-photon amplitude, normalized so that the
// motionless-origin limit is e_z Theta(t_out - t) e^{(i w_eg - Gamma/2)(t_out - t)}.
struct PhotonAmplitude {
    std::array<std::complex<double>, 3> vector{}; // Cartesian components
    double t_plus = 0.0;  // t - t_out - r/c
    double t_minus = 0.0; // t - t_out + r/c
};

// Full two-branch amplitude at complex frequency w = w_eg + i Gamma/2.
// Within the light-cone shell |t - t_out| < r/c only the outgoing branch
// contributes. Requires Gamma |x| / c <= 1e-3.
PhotonAmplitude photon_amplitude(const std::array<double, 3>& x, double t,
                                 const AtomSpec& atom, const PulseSpec& pulse);

// Near-origin expansion, valid for eta = w_eg |x| / c < 0.3:
// Theta(t_out - t) e^{(i w_eg - Gamma/2)(t_out - t)}
//   (e_z (1 - eta²/10) + e_theta sin(theta) eta²/10).
PhotonAmplitude photon_amplitude_near_origin(const std::array<double, 3>& x,
                                             double t, const AtomSpec& atom,
                                             const PulseSpec& pulse);

// Instantaneous-regime form: time dependence factorized, pattern functions
// evaluated at the real w_eg.
PhotonAmplitude photon_amplitude_instantaneous(const std::array<double, 3>& x,
                                               double t, const AtomSpec& atom,
                                               const PulseSpec& pulse);

// e_z-projection of the two-branch sum g^(+) e^{iu} + g^(-) e^{-iu} at real
// frequency: f(u)(3cos²theta - 1) + sin²theta sin(u)/u with f = j1(u)/u.
// Tends to 2/3 as u -> 0.
double axial_projection_two_branch(double u, double cos_theta);

// Weak-confinement ratio integrand (9/4)(e_z-projection)²; tends to 1 as
// u -> 0.
double weak_integrand(double u, double cos_theta);

} // namespace sim
