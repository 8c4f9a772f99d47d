#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sim {

// Evaluation grid of one dimensionless variable.
struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int points = 0;

    std::vector<double> values() const;
};

// Flat key = value scenario configuration. Every physical value is parsed
// with an explicit unit suffix; plain Hz/kHz/MHz suffixes denote ordinary
// frequencies and are converted to angular ones (factor 2 pi).
struct Scenario {
    // atom
    std::optional<double> omega_eg;      // rad/s
    std::optional<double> gamma;         // 1/s
    std::optional<double> dipole_moment; // C m
    std::optional<double> mass;          // kg
    // trap
    std::optional<double> omega_T;                      // rad/s
    std::optional<double> omega_x, omega_y, omega_z;    // rad/s
    // modulation
    std::optional<double> delta;
    std::optional<double> omega_M; // rad/s
    // center-of-mass state
    std::optional<std::string> state; // ground|thermal|thermal_doppler|squeezed|squeezed_thermal|coherent
    std::optional<double> nbar;
    std::optional<double> temperature; // K
    std::optional<double> r;
    std::optional<double> phi;       // rad
    std::optional<double> alpha_re, alpha_im;
    // pulse timing
    std::optional<double> t0;       // s
    std::optional<double> gamma_dt; // Gamma (t_out - t0), dimensionless
    // grids
    std::optional<double> grid_min, grid_max;
    std::optional<std::int64_t> grid_points;
    // numerics
    std::optional<std::int64_t> mc_samples;
    std::optional<bool> antithetic;
    std::optional<double> quad_tol;
    std::optional<double> mathieu_tol;
    // sweep
    std::optional<std::string> sweep_variable; // eta0|r|x_param
    std::optional<double> x_param;
    std::optional<double> eta0;
    // output / control
    std::optional<std::string> out;
    std::optional<bool> verify;
    std::optional<std::uint64_t> seed;

    std::vector<std::string> warnings;
    // Canonical key -> formatted value of every key present, for the sidecar.
    std::map<std::string, std::string> raw;

    // Throws config_error naming the key when absent.
    double require(const std::optional<double>& field, const char* key) const;

    GridSpec grid_or(double def_min, double def_max, int def_points) const;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

} // namespace sim
