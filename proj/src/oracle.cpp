#include "sim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sim/constants.hpp"
#include "sim/errors.hpp"
#include "sim/photon_field.hpp"
#include "sim/rng.hpp"

namespace sim {

namespace {

constexpr double c0 = constants::speed_of_light;

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(constants::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double z_old = z;
            z -= p0 / pp;
            if (std::abs(z - z_old) < 1e-15) break;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

// Kahan-compensated accumulator; summation order is fixed by the caller.
struct KahanSum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

struct WeakSampler {
    double eta0;
    std::uint64_t seed;

    // Sample i draws four uniforms at counters 4i..4i+3 and converts them to
    // three Gaussian coordinates via Box-Muller.
    double sample(std::uint64_t i, bool mirror) const {
        const double u1 = uniform_at(seed, 4 * i);
        const double u2 = uniform_at(seed, 4 * i + 1);
        const double u3 = uniform_at(seed, 4 * i + 2);
        const double u4 = uniform_at(seed, 4 * i + 3);
        const double rad1 = std::sqrt(-2.0 * std::log(u1));
        const double rad2 = std::sqrt(-2.0 * std::log(u3));
        double g[3] = {rad1 * std::cos(constants::two_pi * u2),
                       rad1 * std::sin(constants::two_pi * u2),
                       rad2 * std::cos(constants::two_pi * u4)};
        for (double& v : g) v *= mirror ? -eta0 : eta0;
        const double u = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
        const double cos_theta = u > 0.0 ? g[2] / u : 1.0;
        return weak_integrand(u, cos_theta);
    }
};

} // namespace

double quad_strong(const CoMState& state, const TrapSpec& trap,
                   const AtomSpec& atom, double gamma, const PulseSpec& pulse,
                   double t, const QuadratureConfig& cfg) {
    if (!(cfg.abs_tol > 0.0))
        throw std::domain_error("quad_strong: tolerance must be positive");
    if (cfg.max_subdivisions < 8)
        throw std::domain_error("quad_strong: need at least 8 subdivisions");

    // Same validity guard as strong_ratio: worst-phase eta per axis < 0.3.
    for (int j = 0; j < 3; ++j) {
        const AxisMoments& m = state.axis(j);
        const double var_max = constants::hbar / (2.0 * atom.mass * trap.omega(j)) *
                               (2.0 * m.occupancy + 1.0 + 2.0 * std::abs(m.pair_moment));
        if (atom.omega_eg * std::sqrt(var_max) / c0 >= 0.3)
            throw regime_error("quad_strong: per-axis eta >= 0.3");
    }

    const double tau = pulse.tau(t);
    const double span = tau - pulse.t0;
    if (!(span > 0.0)) return 0.0;
    const double prefactor =
        std::exp(-gamma * ((t - tau) + (pulse.t_out - tau)));
    const double k_deficit =
        atom.omega_eg * atom.omega_eg / (5.0 * c0 * c0);

    // The e^{-Gamma s} weight makes contributions beyond ~45 lifetimes
    // smaller than e^{-45}; cut the domain there.
    const double s_cut = std::min(span, 45.0 / gamma);

    // Variance of the deficit combination at t0 + (span - s); s is the
    // backward time from tau.
    const auto variance_sum = [&](double s) {
        const double dt = span - s;
        return free_moment(state.axis(2), trap.omega_z, atom.mass, dt) +
               2.0 * free_moment(state.axis(0), trap.omega_x, atom.mass, dt) +
               2.0 * free_moment(state.axis(1), trap.omega_y, atom.mass, dt);
    };

    // Panels aligned to the fastest variance oscillation and the decay scale.
    double width = s_cut;
    for (int j = 0; j < 3; ++j)
        width = std::min(width, constants::pi / (2.0 * trap.omega(j)));
    width = std::min(width, 0.25 / gamma);
    const int base_panels = static_cast<int>(std::ceil(s_cut / width));

    std::vector<double> gl_nodes, gl_weights;
    gauss_legendre(cfg.panel_order, gl_nodes, gl_weights);

    double best = 0.0, previous = 0.0;
    for (int level = 0; level <= cfg.max_subdivisions; ++level) {
        const int panels = base_panels << level;
        const double h = s_cut / panels;
        const std::size_t n = static_cast<std::size_t>(panels) * cfg.panel_order;

        std::vector<double> w(n), decay(n), integrand2(n);
        for (int p = 0; p < panels; ++p) {
            const double left = p * h;
            for (int q = 0; q < cfg.panel_order; ++q) {
                const std::size_t idx = static_cast<std::size_t>(p) * cfg.panel_order + q;
                const double s = left + 0.5 * h * (1.0 + gl_nodes[q]);
                w[idx] = 0.5 * h * gl_weights[q];
                decay[idx] = std::exp(-gamma * s);
                integrand2[idx] = decay[idx] * (1.0 - k_deficit * variance_sum(s));
            }
        }

        // Product-grid double sum over (s1, s2).
        KahanSum total;
        for (std::size_t i = 0; i < n; ++i) {
            KahanSum row;
            for (std::size_t j = 0; j < n; ++j)
                row.add(w[j] * integrand2[j]);
            total.add(w[i] * decay[i] * row.sum);
        }
        best = gamma * gamma * prefactor * total.sum;

        if (level > 0 && std::abs(best - previous) <= cfg.abs_tol) return best;
        previous = best;
    }
    throw accuracy_error("quad_strong: no convergence within subdivision budget",
                         best);
}

MonteCarloEstimate mc_weak_eta(double eta0, const MonteCarloConfig& cfg) {
    if (eta0 < 0.0) throw std::domain_error("mc_weak: eta0 must be >= 0");
    if (cfg.sample_count < 1000)
        throw std::domain_error("mc_weak: need at least 1e3 samples");

    const WeakSampler sampler{eta0, cfg.seed};
    const std::uint64_t n = cfg.sample_count;

    // Fixed partition into blocks; per-block and across-block sums are both
    // compensated, so the merge order never affects the result.
    constexpr std::uint64_t block = 1 << 16;
    KahanSum sum, sum_sq;
    std::uint64_t done = 0;
    while (done < n) {
        const std::uint64_t stop = std::min(n, done + block);
        KahanSum bs, bs2;
        for (std::uint64_t i = done; i < stop; ++i) {
            double v;
            if (cfg.antithetic) {
                const std::uint64_t base = i / 2;
                v = sampler.sample(base, i % 2 == 1);
            } else {
                v = sampler.sample(i, false);
            }
            bs.add(v);
            bs2.add(v * v);
        }
        sum.add(bs.sum);
        sum_sq.add(bs2.sum);
        done = stop;
    }

    MonteCarloEstimate est;
    est.estimate = sum.sum / static_cast<double>(n);
    const double var =
        std::max(0.0, sum_sq.sum / static_cast<double>(n) -
                          est.estimate * est.estimate);
    est.standard_error = std::sqrt(var / static_cast<double>(n));
    return est;
}

MonteCarloEstimate mc_weak(const CoMState& state, const TrapSpec& trap,
                           const AtomSpec& atom, const MonteCarloConfig& cfg) {
    if (!state.is_gaussian())
        throw std::invalid_argument(
            "mc_weak: state is not a zero-mean Gaussian, position density "
            "unsupported");

    double variance_3d = 0.0;
    double per_axis[3];
    for (int j = 0; j < 3; ++j) {
        per_axis[j] = free_moment(state.axis(j), trap.omega(j), atom.mass, 0.0);
        variance_3d += per_axis[j];
    }
    for (int j = 0; j < 2; ++j) {
        if (std::abs(per_axis[j] - per_axis[2]) > 1e-9 * per_axis[2])
            throw std::invalid_argument("mc_weak: state is not isotropic");
    }
    return mc_weak_eta(effective_lamb_dicke(variance_3d, atom.omega_eg), cfg);
}

TransferMatrix mathieu_reference(const ModulationSpec& mod, double omega_T,
                                 double t, double tol) {
    if (!(tol >= 1e-12 && tol <= 1e-10))
        throw std::domain_error("mathieu_reference: tol outside [1e-12, 1e-10]");
    if (t < mod.t0)
        throw std::domain_error("mathieu_reference: t must be >= t0");

    TransferMatrix out;
    out.t0 = mod.t0;
    out.t = t;
    const double span = t - mod.t0;
    if (span == 0.0) return out;

    const double omega_T2 = omega_T * omega_T;
    const auto run = [&](long steps) {
        const double h = span / static_cast<double>(steps);
        double y[4] = {1.0, 0.0, 0.0, 1.0};
        const auto deriv = [&](double time, const double* s, double* d) {
            const double w2 =
                omega_T2 * (1.0 + mod.delta * std::sin(mod.omega_M * (time - mod.t0)));
            const double k = w2 / omega_T;
            d[0] = omega_T * s[1];
            d[1] = -k * s[0];
            d[2] = omega_T * s[3];
            d[3] = -k * s[2];
        };
        for (long i = 0; i < steps; ++i) {
            const double time = mod.t0 + i * h;
            double k1[4], mid[4], k2[4];
            deriv(time, y, k1);
            for (int j = 0; j < 4; ++j) mid[j] = y[j] + 0.5 * h * k1[j];
            deriv(time + 0.5 * h, mid, k2);
            for (int j = 0; j < 4; ++j) y[j] += h * k2[j];
        }
        return std::array<double, 4>{y[0], y[1], y[2], y[3]};
    };

    const double fastest = std::max(omega_T, mod.omega_M);
    long steps =
        std::max<long>(64, static_cast<long>(std::ceil(span * fastest * 8.0)));
    auto coarse = run(steps);
    std::array<double, 4> extrapolated_prev{};
    bool have_prev = false;
    for (int iter = 0; iter < 24; ++iter) {
        const auto fine = run(steps * 2);
        // Midpoint global error is O(h²): Richardson with factor 4.
        std::array<double, 4> extrapolated;
        for (int j = 0; j < 4; ++j)
            extrapolated[j] = (4.0 * fine[j] - coarse[j]) / 3.0;
        if (have_prev) {
            double diff = 0.0;
            for (int j = 0; j < 4; ++j)
                diff = std::max(diff, std::abs(extrapolated[j] - extrapolated_prev[j]));
            if (diff <= tol) {
                out.m11 = extrapolated[0];
                out.m21 = extrapolated[1];
                out.m12 = extrapolated[2];
                out.m22 = extrapolated[3];
                return out;
            }
        }
        extrapolated_prev = extrapolated;
        have_prev = true;
        coarse = fine;
        steps *= 2;
    }
    throw accuracy_error("mathieu_reference: no convergence", 0.0);
}

} // namespace sim
