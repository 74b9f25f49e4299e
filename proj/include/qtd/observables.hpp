#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "qtd/basis.hpp"
#include "qtd/config.hpp"
#include "qtd/errors.hpp"
#include "qtd/rates.hpp"
#include "qtd/steady.hpp"

namespace qtd {

struct HeatCurrents {
    double left = 0.0;   ///< into the system from the left reservoir
    double right = 0.0;  ///< into the system from the right reservoir
    double aux = 0.0;    ///< from the auxiliary reservoir (zero when absent)
};

/// Steady-state heat currents for a given auxiliary preparation.
inline HeatCurrents heat_currents_steady(const DiodeConfig& c,
                                         std::optional<AuxPreparation> prep = std::nullopt) {
    const SteadyReport rep = steady_numeric(c, std::move(prep));
    return {rep.q_left, rep.q_right, rep.q_aux};
}

/// Net downward cycle rate of subspace m evaluated from a conditional
/// steady-population 4-vector.  At a true steady state the four pairwise net
/// rates agree up to sign in the pattern (+, -, -, +); they are verified to
/// the rounding floor of the underlying gross rates and RateMismatch is
/// raised when the pattern fails (e.g. for a non-steady vector).
inline double cycle_rate(const DiodeConfig& c, const Eigen::Vector4d& v, int m) {
    const SubspaceRates r = subspace_rates(c, m);
    const double lt_down = 2.0 * (r.jl_top_m * v[0] - r.jl_top_p * v[2]);
    const double lb_down = 2.0 * (r.jl_bot_m * v[1] - r.jl_bot_p * v[3]);
    const double rt_down = 2.0 * (r.jr_top_m * v[0] - r.jr_top_p * v[1]);
    const double rb_down = 2.0 * (r.jr_bot_m * v[2] - r.jr_bot_p * v[3]);
    double gross = 0.0;
    for (double term : {r.jl_top_m * v[0], r.jl_top_p * v[2], r.jl_bot_m * v[1],
                        r.jl_bot_p * v[3], r.jr_top_m * v[0], r.jr_top_p * v[1],
                        r.jr_bot_m * v[2], r.jr_bot_p * v[3]})
        gross = std::max(gross, 2.0 * std::abs(term));
    const double tol = 1e-12 * (gross + c.gamma);
    if (std::abs(lb_down + lt_down) > tol || std::abs(rt_down + lt_down) > tol
        || std::abs(rb_down - lt_down) > tol)
        throw RateMismatch("pairwise net rates do not close into a single cycle flux");
    return lt_down;
}

/// Left heat current of the device with all auxiliary atoms removed but the
/// bare splitting unchanged.
inline double baseline_current(const DiodeConfig& c) {
    DiodeConfig bare = c;
    bare.n_aux = 0;
    bare.omega_aux.clear();
    bare.g_la.clear();
    bare.aux_bath.reset();
    bare = validate_config(bare);
    return -4.0 * bare.g_lr * cycle_rate_analytic(bare, 1);
}

/// Left heat current for a single auxiliary atom prepared in the classical
/// mixture p_1 |excited> + (1 - p_1) |ground>.
inline double mixed_current(const DiodeConfig& c, double p_1) {
    if (c.n_aux != 1)
        throw DomainError("mixed_current requires exactly one auxiliary atom");
    if (!(p_1 >= 0.0 && p_1 <= 1.0))
        throw DomainError("mixture fraction must lie in [0, 1]");
    const double q_exc = -4.0 * c.g_lr * cycle_rate_analytic(c, 1);
    const double q_gnd = -4.0 * c.g_lr * cycle_rate_analytic(c, 2);
    return p_1 * q_exc + (1.0 - p_1) * q_gnd;
}

/// Mixture fraction at which the single-auxiliary device carries exactly the
/// bare-device current: p_c = (Q'_L - Q_L,gnd) / (Q_L,exc - Q_L,gnd).
inline double critical_fraction(const DiodeConfig& c) {
    if (c.n_aux != 1)
        throw DomainError("critical_fraction requires exactly one auxiliary atom");
    const double q_exc = -4.0 * c.g_lr * cycle_rate_analytic(c, 1);
    const double q_gnd = -4.0 * c.g_lr * cycle_rate_analytic(c, 2);
    const double q_bare = baseline_current(c);
    if (q_exc == q_gnd)
        throw DomainError("excited and ground branch currents coincide; no crossing");
    return (q_bare - q_gnd) / (q_exc - q_gnd);
}

struct RectificationResult {
    enum class Method { Numeric, ClosedForm, VanishingAuxDissipation };
    double q_forward = 0.0;  ///< left current with the configured temperatures
    double q_reverse = 0.0;  ///< left current with temperatures swapped
    double factor = 0.0;     ///< |q_f + q_r| / max(|q_f|, |q_r|)
    Method method = Method::Numeric;
};

namespace detail {

inline double rectification_factor(double q_f, double q_r, double gamma) {
    const double scale = std::max(std::abs(q_f), std::abs(q_r));
    if (scale < 1e-14 * gamma)
        throw BothCurrentsZero("both forward and reverse currents vanish");
    return std::abs(q_f + q_r) / scale;
}

}  // namespace detail

/// Rectification factor from two numeric steady states (temperatures as
/// configured, then swapped; the same preparation is used for both).
inline RectificationResult rectification_numeric(const DiodeConfig& c,
                                                 std::optional<AuxPreparation> prep
                                                 = std::nullopt) {
    RectificationResult res;
    res.method = RectificationResult::Method::Numeric;
    res.q_forward = steady_numeric(c, prep).q_left;
    res.q_reverse = steady_numeric(c.swapped_temperatures(), std::move(prep)).q_left;
    res.factor = detail::rectification_factor(res.q_forward, res.q_reverse, c.gamma);
    return res;
}

/// Denominator amplitude of the closed-form current for subspace m, with the
/// left-slot temperature t_a and right-slot temperature t_b:
///   A(t_a, t_b) = sinh(w_L'/t_a + w_R/t_b)
///               + exp(2 g_LR / t_b) sinh(w_L'/t_a)
///               + exp(2 g_LR / t_a) sinh(w_R/t_b).
/// Symmetric under (t_a, t_b) swap exactly when w_L' = w_R.
inline double amplitude_A(const DiodeConfig& c, double t_a, double t_b, int m = 1) {
    detail::require_positive(t_a, "left-slot temperature", "temperature");
    detail::require_positive(t_b, "right-slot temperature", "temperature");
    const double wl = effective_left_frequency(c, m);
    const double wr = c.omega_right;
    const double g2 = 2.0 * c.g_lr;
    return std::sinh(wl / t_a + wr / t_b) + std::exp(g2 / t_b) * std::sinh(wl / t_a)
           + std::exp(g2 / t_a) * std::sinh(wr / t_b);
}

/// Closed-form left heat current of subspace m at explicit temperatures
/// (t_left, t_right):
///   Q_L = 4 g_LR gamma sinh(2 g_LR / t_right - 2 g_LR / t_left) / A(t_left, t_right).
inline double closed_form_current(const DiodeConfig& c, double t_left, double t_right,
                                  int m = 1) {
    const double g2 = 2.0 * c.g_lr;
    return 4.0 * c.g_lr * c.gamma * std::sinh(g2 / t_right - g2 / t_left)
           / amplitude_A(c, t_left, t_right, m);
}

/// Closed-form (forward, reverse) left currents at the configured temperatures.
inline std::pair<double, double> closed_form_currents(const DiodeConfig& c, int m = 1) {
    return {closed_form_current(c, c.temp_left, c.temp_right, m),
            closed_form_current(c, c.temp_right, c.temp_left, m)};
}

/// Closed-form rectification factor: 1 - min(A_f, A_r) / max(A_f, A_r).
/// Raises BothCurrentsZero at equal temperatures (no net flow either way).
inline RectificationResult rectification_closed_form(const DiodeConfig& c, int m = 1) {
    RectificationResult res;
    res.method = RectificationResult::Method::ClosedForm;
    std::tie(res.q_forward, res.q_reverse) = closed_form_currents(c, m);
    if (c.temp_left == c.temp_right)
        throw BothCurrentsZero("equal bath temperatures carry no current in either direction");
    const double a_f = amplitude_A(c, c.temp_left, c.temp_right, m);
    const double a_r = amplitude_A(c, c.temp_right, c.temp_left, m);
    res.factor = 1.0 - std::min(a_f, a_r) / std::max(a_f, a_r);
    return res;
}

struct RectificationBounds {
    double all_ground = 0.0;
    double all_excited = 0.0;
    double lower() const { return std::min(all_ground, all_excited); }
    double upper() const { return std::max(all_ground, all_excited); }
};

/// Rectification factors of the two extremal classical preparations.  Any
/// classical mixture lies between them.
inline RectificationBounds rectification_bounds(const DiodeConfig& c) {
    return {rectification_numeric(c, AuxPreparation::all_ground()).factor,
            rectification_numeric(c, AuxPreparation::all_excited()).factor};
}

/// Limiting subspace weights (m = 1 excited, m = 2 ground) of the
/// single-auxiliary device as the auxiliary dissipation rate tends to zero:
/// the auxiliary reservoir then only selects the branch ratio, by balancing
/// its absorption and emission over the conditional pair steady states.
inline std::pair<double, double> aux_limit_weights(const DiodeConfig& c) {
    if (!c.aux_bath || c.n_aux != 1)
        throw AuxBathUnsupported(
            "limiting weights require a single auxiliary atom with its own reservoir");
    const Eigen::Vector4d pi_e = steady_subspace_analytic(c, 1);
    const Eigen::Vector4d pi_g = steady_subspace_analytic(c, 2);
    double k_down = 0.0;  // auxiliary emission, subspace 1 -> 2
    double k_up = 0.0;    // auxiliary absorption, subspace 2 -> 1
    const int M = c.n_subspaces();
    for (const Transition& t : transitions(c, Reservoir::Aux)) {
        const double jm = spectral_rate(-t.bohr_frequency, c.aux_bath->temp_aux,
                                        c.aux_bath->gamma_aux);
        const double jp = spectral_rate(+t.bohr_frequency, c.aux_bath->temp_aux,
                                        c.aux_bath->gamma_aux);
        for (const auto& [u, l] : t.pairs) {
            k_down += 2.0 * jm * pi_e[(u - 1) / M];
            k_up += 2.0 * jp * pi_g[(l - 1) / M];
        }
    }
    const double total = k_up + k_down;
    return {k_up / total, k_down / total};
}

/// Rectification factor in the vanishing-auxiliary-dissipation limit: each
/// direction uses its own limiting weights on the bath-free device.
inline RectificationResult rectification_aux_limit(const DiodeConfig& c) {
    RectificationResult res;
    res.method = RectificationResult::Method::VanishingAuxDissipation;
    const DiodeConfig rev = c.swapped_temperatures();
    const auto [wf_e, wf_g] = aux_limit_weights(c);
    const auto [wr_e, wr_g] = aux_limit_weights(rev);
    DiodeConfig bare = c;
    bare.aux_bath.reset();
    bare = validate_config(bare);
    const DiodeConfig bare_rev = bare.swapped_temperatures();
    res.q_forward = -4.0 * bare.g_lr
                    * (wf_e * cycle_rate_analytic(bare, 1) + wf_g * cycle_rate_analytic(bare, 2));
    res.q_reverse = -4.0 * bare.g_lr
                    * (wr_e * cycle_rate_analytic(bare_rev, 1)
                       + wr_g * cycle_rate_analytic(bare_rev, 2));
    res.factor = detail::rectification_factor(res.q_forward, res.q_reverse, c.gamma);
    return res;
}

}  // namespace qtd
