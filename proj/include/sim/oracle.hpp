#pragma once

#include <cstdint>

#include "sim/absorption.hpp"
#include "sim/gaussian_dynamics.hpp"
#include "sim/phys_core.hpp"

namespace sim {

// Brute-force validators for the closed-form results. These share as little
// code as possible with the formulas they check: quad_strong only reuses
// free_moment, mc_weak only the pattern-function evaluator.

struct QuadratureConfig {
    double abs_tol = 1e-9;
    int max_subdivisions = 12; // refinement doublings
    int panel_order = 8;       // Gauss-Legendre nodes per panel
};

struct MonteCarloConfig {
    std::uint64_t sample_count = 1000000;
    std::uint64_t seed = 0;
    bool antithetic = false;
};

struct MonteCarloEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
};

// Direct 2D time quadrature of the strong-confinement double integral
// Gamma² ∬ dt1 dt2 Theta(t_out-t1) Theta(t_out-t2) e^{-Gamma(t+t_out-t1-t2)}
//   (1 - (w_eg²/5c²) <z_I²(t2) + 2x_I²(t2) + 2y_I²(t2)>)
// on a product grid with panels aligned to the variance period pi/w_j.
double quad_strong(const CoMState& state, const TrapSpec& trap,
                   const AtomSpec& atom, double gamma, const PulseSpec& pulse,
                   double t, const QuadratureConfig& cfg = {});

// Monte-Carlo average of the weak-confinement expectation
// (9/4) (e_z · [g^(+) e^{iwr/c} + g^(-) e^{-iwr/c}])² at w = w_eg over the 3D
// Gaussian position density with per-axis standard deviation eta0 (positions
// in units of c/w_eg). Deterministic for a fixed config.
MonteCarloEstimate mc_weak_eta(double eta0, const MonteCarloConfig& cfg = {});

// Same, for a zero-mean isotropic Gaussian CoMState in the given trap;
// throws for states the Gaussian closed form does not cover.
MonteCarloEstimate mc_weak(const CoMState& state, const TrapSpec& trap,
                           const AtomSpec& atom, const MonteCarloConfig& cfg = {});

// Independent Mathieu integration (fixed-step explicit midpoint with
// step-halving Richardson extrapolation); test/--verify reference only.
TransferMatrix mathieu_reference(const ModulationSpec& mod, double omega_T,
                                 double t, double tol = 1e-10);

} // namespace sim
