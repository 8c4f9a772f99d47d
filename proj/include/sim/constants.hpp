#pragma once

// Physical constants, CODATA 2018. Fixed values so that paper-number
// checks are reproducible across platforms.

namespace sim::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double speed_of_light = 299792458.0;          // m/s (exact)
inline constexpr double planck = 6.62607015e-34;               // J s (exact)
inline constexpr double hbar = 1.054571817e-34;                // J s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;// F/m
inline constexpr double boltzmann = 1.380649e-23;              // J/K (exact)
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg

// 174Yb, the species of the reference trap experiment.
inline constexpr double yb174_mass = 174.0 * atomic_mass_unit; // kg

} // namespace sim::constants
