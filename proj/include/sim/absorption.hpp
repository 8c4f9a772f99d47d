#pragma once

#include <array>
#include <string>
#include <vector>

#include "sim/gaussian_dynamics.hpp"
#include "sim/phys_core.hpp"

namespace sim {

enum class Regime { strong_slow, strong_fast, weak_instantaneous, combined };

std::string to_string(Regime regime);

struct ExcitationResult {
    double p_e = 0.0;
    double p_id = 0.0;
    double ratio = 0.0;
    Regime regime_tag = Regime::strong_slow;
};

// Probability with a validity flag: set when the quadratic deficit formula
// was pushed past its validity edge and the value was clamped into [0, 1].
struct ClampedProbability {
    double value = 0.0;
    bool clamped = false;
};

// Per-axis regime numbers for choosing between the strong/weak/combined
// formulas: eta_j = w_eg sqrt(<x_j²>)/c, Gamma/w_j, and the Doppler ratio.
struct RegimeDiagnostic {
    std::array<double, 3> eta;
    std::array<double, 3> gamma_over_omega;
    DopplerRatio doppler;
};

RegimeDiagnostic regime_diagnostic(const CoMState& state, const TrapSpec& trap,
                                   const AtomSpec& atom, double gamma);

// Ideal motionless-atom excitation probability
// e^{-Gamma |t_out - t|} (1 - e^{-Gamma (tau - t0)})², tau = min(t, t_out).
double p_ideal(double t, double gamma, const PulseSpec& pulse);

// Motional correction factor A_j of one axis over the interaction window dt:
// <b†²> Gamma e^{2iw dt} (1 - e^{-(Gamma+2iw)dt}) /
//   ((Gamma+2iw)(1 - e^{-Gamma dt})) + <b†b + 1/2> + c.c.
double a_coeff(const AxisMoments& axis_state, double omega_j, double gamma,
               double dt);

// Instantaneous (Gamma >> w_j) limit of A_j:
// <(b† e^{iw dt} + b e^{-iw dt})²>.
double a_instantaneous(const AxisMoments& axis_state, double omega_j, double dt);

// Strong-confinement ratio P_e/P_id =
// 1 - (w_eg²/5c²)(hbar A_z/(2mw_z) + 2 hbar A_x/(2mw_x) + 2 hbar A_y/(2mw_y))
// evaluated at tau = min(t, t_out); requires per-axis eta < 0.3.
// Axis z is the dipole axis.
ExcitationResult strong_ratio(const CoMState& state, const TrapSpec& trap,
                              const AtomSpec& atom, double gamma, double t,
                              const PulseSpec& pulse);

// Gamma << w_j limit: deficit proportional to the per-axis mean energies
// E_j (J).
double strong_ratio_energy_limit(const std::array<double, 3>& mean_energies,
                                 const TrapSpec& trap, const AtomSpec& atom);

// Squeezed-vacuum ratio at phase-matched times:
// 1 - (w_eg²/5c²)(Dz0² e^{-2r_z} + 2 Dx0² e^{-2r_x} + 2 Dy0² e^{-2r_y}).
double squeezed_ratio_strong(double r_x, double r_y, double r_z,
                             const TrapSpec& trap, const AtomSpec& atom);

// Weak-confinement closed form for an isotropic Gaussian state of effective
// Lamb-Dicke parameter eta0; small-eta0 series below eta0 = 0.1.
double weak_ratio_gaussian(double eta0);

// P_e(t) = weak_ratio_gaussian(eta0) * p_ideal(t) over a time grid
// (Gamma >> w_T, so eta0 is static over the absorption window).
std::vector<std::pair<double, double>> p_trace(const std::vector<double>& time_grid,
                                               double eta0, double gamma,
                                               const PulseSpec& pulse);

// Combined-regime probability at phase-matched t_out from raw per-axis
// position/momentum second moments (sin²phi(t_out) = 0, Gamma(t_out-t0) >> 1):
// P_e = 1 - (w_eg²/5c²) [ (2/Gamma²m²)(<pz²> + 2<px²> + 2<py²>)
//        - (2/Gamma²)(wz²<z²> + 2wx²<x²> + 2wy²<y²>)
//        + <z²> + 2<x²> + 2<y²> ],   discarding O(w³/Gamma³).
struct SecondMoments {
    std::array<double, 3> position; // <x_j²>, m²
    std::array<double, 3> momentum; // <p_j²>, kg² m²/s²
};

ClampedProbability p_squeezed_aniso(const SecondMoments& state_at_tout,
                                    const TrapSpec& trap, const AtomSpec& atom,
                                    double gamma);

// Isotropic reduction, x_param = w_eg² <H0> / (3 m c² w_T²):
// P_e = 1 - x_param ((1 - 2(w_T/Gamma)²) e^{-2r} + 2 (w_T/Gamma)² e^{+2r}).
ClampedProbability p_squeezed_iso(double x_param, double r,
                                  double omega_over_gamma);

struct OptimalSqueeze {
    double r = 0.0;
    bool beneficial = false; // false when gamma <= sqrt(2) w_T
};

// Largest squeezing that still increases the absorption probability:
// r* = ln(Gamma / (sqrt(2) w_T)) / 2.
OptimalSqueeze optimal_squeeze(double gamma, double omega_T);

} // namespace sim
