#pragma once

#include <array>
#include <complex>

namespace sim {

// Second moments of one Cartesian axis of the center-of-mass motion,
// in terms of the trap ladder operators: <b† b> and <b²>. Mean
// displacement is zero throughout.
struct AxisMoments {
    double occupancy = 0.0;                    // <b† b>, >= 0
    std::complex<double> pair_moment{0.0, 0.0};// <b²>
};

// Center-of-mass state as per-axis oscillator second moments. States are
// built through the factories below, which enforce the physicality bound
// |<b²>| <= sqrt(<b†b>(<b†b>+1)).
class CoMState {
public:
    CoMState(const AxisMoments& x, const AxisMoments& y, const AxisMoments& z,
             bool gaussian);

    static CoMState ground();
    static CoMState thermal(double nbar);
    static CoMState thermal(double nbar_x, double nbar_y, double nbar_z);
    // Squeezed vacuum S(xi)|0> with xi = r e^{2i phi}.
    static CoMState squeezed(double r, double phi);
    static CoMState squeezed(const std::array<double, 3>& r,
                             const std::array<double, 3>& phi);
    // Squeezed thermal state S(xi) rho_th S†(xi).
    static CoMState squeezed_thermal(double r, double phi, double nbar);
    // Coherent state |alpha> (same alpha on every axis). The stored
    // moments are the raw <b²>, <b†b>; the state is displaced, so it does
    // not qualify as a zero-mean Gaussian unless alpha = 0.
    static CoMState coherent(std::complex<double> alpha);

    const AxisMoments& axis(int j) const { return moments_[j]; } // 0=x,1=y,2=z
    bool is_gaussian() const { return gaussian_; }
    bool is_isotropic() const;

private:
    std::array<AxisMoments, 3> moments_;
    bool gaussian_;
};

// Sinusoidal modulation of an isotropic trap frequency:
// w²(t) = w_T² (1 + delta sin(w_M (t - t0))).
struct ModulationSpec {
    ModulationSpec(double delta, double omega_M, double t0);
    double delta;   // dimensionless, |delta| < 1
    double omega_M; // rad/s, > 0
    double t0;      // s, state-preparation time
};

// 2x2 symplectic map of the dimensionless quadratures
// (x sqrt(m w_T / hbar), p / sqrt(m w_T hbar)) from t0 to t.
struct TransferMatrix {
    double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;
    double t0 = 0.0, t = 0.0;

    double determinant() const { return m11 * m22 - m12 * m21; }
    double trace() const { return m11 + m22; }
};

// M_b * M_a: apply M_a first.
TransferMatrix compose(const TransferMatrix& m_b, const TransferMatrix& m_a);

struct SqueezeParams {
    double r = 0.0;   // >= 0
    double phi = 0.0; // rad, reported in (-pi, pi]
};

// <x_I²(t0+dt)> of one axis evolving freely in a static harmonic trap.
double free_moment(const AxisMoments& axis_state, double omega, double mass,
                   double dt);

// Fundamental-solution transfer matrix of x'' = -w_T²(1+delta sin(w_M(t-t0))) x
// from mod.t0 to t, adaptive RK4 with local error control; the global error
// budget is tol, and det(M) stays within 10*tol of 1.
TransferMatrix mathieu_transfer(const ModulationSpec& mod, double omega_T,
                                double t, double tol = 1e-9);

// Same equation, integrated between two arbitrary times (modulation phase
// still referenced to mod.t0).
TransferMatrix mathieu_transfer_segment(const ModulationSpec& mod,
                                        double omega_T, double t_from,
                                        double t_to, double tol = 1e-9);

struct FloquetResult {
    bool unstable = false;
    double trace_magnitude = 0.0; // |tr M| over one modulation period
};

// One-period Floquet map classification: unstable iff |trace| > 2.
FloquetResult floquet_classify(const ModulationSpec& mod, double omega_T,
                               double tol = 1e-9);

// Squeezing parameters of the Gaussian state obtained by propagating the
// ground-state covariance diag(1/2,1/2) through M. phi is fixed so that
// modulated_variance reproduces the propagated position variance.
SqueezeParams squeeze_from_transfer(const TransferMatrix& m);

// Perturbative resonant-modulation result: r = w_T delta dt / 4,
// phi = w_T dt - pi/2.
SqueezeParams squeeze_approx(double delta, double omega_T, double dt);

// Position variance of an energy eigenstate (or mixture) of mean energy
// <H0> after squeezing (r, phi):
// <x²> = <H0>/(m w_T²) (e^{-2r} cos²phi + e^{+2r} sin²phi).
double modulated_variance(double mean_energy, double mass, double omega_T,
                          const SqueezeParams& sq);

// Mean energy 3 hbar w_T (1/2 + 1/(exp(hbar w_T / kT) - 1)) of the isotropic
// 3D trap at temperature T.
double thermal_energy(double omega_T, double temperature);

} // namespace sim
