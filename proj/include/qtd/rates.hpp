#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "qtd/basis.hpp"
#include "qtd/config.hpp"
#include "qtd/errors.hpp"
#include "qtd/transitions.hpp"

namespace qtd {

/// Mean Bose occupation n(omega, T) = 1/(exp(omega/T) - 1), computed stably:
/// for omega/T > 700 the value underflows a double exponential and the
/// first-order form exp(-omega/T) is returned; ratios omega/T < 1e-9 are
/// rejected (the diverging classical limit is outside every use here).
inline double bose_occupation(double omega, double temperature) {
    if (!(omega > 0.0)) throw DomainError("bose_occupation: omega must be positive");
    if (!(temperature > 0.0)) throw DomainError("bose_occupation: temperature must be positive");
    const double x = omega / temperature;
    if (x < 1e-9) throw DomainError("bose_occupation: omega/T below 1e-9 (diverging occupation)");
    if (x > 700.0) return std::exp(-x);
    return 1.0 / std::expm1(x);
}

/// Flat-spectrum thermal rate J(omega) for signed frequency:
///   J(+omega) = gamma n(omega)      (absorption)
///   J(-omega) = gamma (n(omega)+1)  (emission)
inline double spectral_rate(double signed_omega, double temperature, double gamma) {
    if (signed_omega == 0.0) throw DomainError("spectral_rate: frequency must be nonzero");
    const double n = bose_occupation(std::abs(signed_omega), temperature);
    return signed_omega > 0.0 ? gamma * n : gamma * (n + 1.0);
}

/// Square population-rate matrix: a continuous-time Markov generator
/// (columns sum to zero, off-diagonal entries nonnegative), acting on the
/// population vector as dp/dt = M p.
struct RateGenerator {
    int dim = 0;
    Eigen::MatrixXd entries;
};

namespace detail {

/// Add one dissipation channel to a generator: each (upper, lower) pair
/// contributes emission rate 2 J(-omega) downward and absorption 2 J(+omega)
/// upward.  The explicit factor 2 matches the dissipator convention in which
/// the net pair rate is Gamma = 2[J(-omega) rho_uu - J(+omega) rho_ll].
inline void add_channel(Eigen::MatrixXd& M, const Transition& t, double temperature,
                        double gamma) {
    const double jm = 2.0 * spectral_rate(-t.bohr_frequency, temperature, gamma);
    const double jp = 2.0 * spectral_rate(+t.bohr_frequency, temperature, gamma);
    for (const auto& [u1, l1] : t.pairs) {
        const int u = u1 - 1, l = l1 - 1;
        M(l, u) += jm;
        M(u, u) -= jm;
        M(u, l) += jp;
        M(l, l) -= jp;
    }
}

}  // namespace detail

/// The eight thermal rates and four Bohr frequencies of one independent
/// subspace m: left pair frequencies w_{L,m} (R excited) and w_{L,m+2^N}
/// (R ground), right frequencies w_{R,1} = w_R + 2g_LR and w_{R,2} = w_R - 2g_LR.
struct SubspaceRates {
    double w_l_top, w_l_bot;    ///< omega_{L,m}, omega_{L,m+2^N}
    double w_r_top, w_r_bot;    ///< omega_{R,1}, omega_{R,2}
    double jl_top_p, jl_top_m;  ///< J_L(+-omega_{L,m})
    double jl_bot_p, jl_bot_m;  ///< J_L(+-omega_{L,m+2^N})
    double jr_top_p, jr_top_m;  ///< J_R(+-omega_{R,1})
    double jr_bot_p, jr_bot_m;  ///< J_R(+-omega_{R,2})
};

inline SubspaceRates subspace_rates(const DiodeConfig& c, int m) {
    if (m < 1 || m > c.n_subspaces())
        throw IndexOutOfRange("subspace bitmask m = " + std::to_string(m)
                              + " outside [1, " + std::to_string(c.n_subspaces()) + "]");
    double shift = 0.0;  // sum_a 2 g_La z_a at this auxiliary configuration
    const std::vector<int> z = aux_signs(c, m);
    for (int a = 0; a < c.n_aux; ++a) shift += 2.0 * c.g_la[static_cast<std::size_t>(a)] * z[static_cast<std::size_t>(a)];
    SubspaceRates r;
    r.w_l_top = c.omega_left + 2.0 * c.g_lr + shift;
    r.w_l_bot = c.omega_left - 2.0 * c.g_lr + shift;
    r.w_r_top = c.omega_right + 2.0 * c.g_lr;
    r.w_r_bot = c.omega_right - 2.0 * c.g_lr;
    r.jl_top_p = spectral_rate(+r.w_l_top, c.temp_left, c.gamma);
    r.jl_top_m = spectral_rate(-r.w_l_top, c.temp_left, c.gamma);
    r.jl_bot_p = spectral_rate(+r.w_l_bot, c.temp_left, c.gamma);
    r.jl_bot_m = spectral_rate(-r.w_l_bot, c.temp_left, c.gamma);
    r.jr_top_p = spectral_rate(+r.w_r_top, c.temp_right, c.gamma);
    r.jr_top_m = spectral_rate(-r.w_r_top, c.temp_right, c.gamma);
    r.jr_bot_p = spectral_rate(+r.w_r_bot, c.temp_right, c.gamma);
    r.jr_bot_m = spectral_rate(-r.w_r_bot, c.temp_right, c.gamma);
    return r;
}

/// 4x4 generator of independent subspace m over the ordered levels
/// (rho_11, rho_22, rho_33, rho_44) = basis indices (m, m+2^N, m+2^(N+1),
/// m+2^(N+1)+2^N): the sum of the left-bath and right-bath blocks.
inline RateGenerator subspace_generator(const DiodeConfig& c, int m) {
    const SubspaceRates r = subspace_rates(c, m);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4, 4);
    // left bath: pairs (1,3) at w_l_top and (2,4) at w_l_bot
    M(0, 0) -= 2.0 * r.jl_top_m; M(2, 0) += 2.0 * r.jl_top_m;
    M(2, 2) -= 2.0 * r.jl_top_p; M(0, 2) += 2.0 * r.jl_top_p;
    M(1, 1) -= 2.0 * r.jl_bot_m; M(3, 1) += 2.0 * r.jl_bot_m;
    M(3, 3) -= 2.0 * r.jl_bot_p; M(1, 3) += 2.0 * r.jl_bot_p;
    // right bath: pairs (1,2) at w_r_top and (3,4) at w_r_bot
    M(0, 0) -= 2.0 * r.jr_top_m; M(1, 0) += 2.0 * r.jr_top_m;
    M(1, 1) -= 2.0 * r.jr_top_p; M(0, 1) += 2.0 * r.jr_top_p;
    M(2, 2) -= 2.0 * r.jr_bot_m; M(3, 2) += 2.0 * r.jr_bot_m;
    M(3, 3) -= 2.0 * r.jr_bot_p; M(2, 3) += 2.0 * r.jr_bot_p;
    return {4, std::move(M)};
}

/// Per-reservoir full-dimension generator (used by heat currents).
inline RateGenerator reservoir_generator(const DiodeConfig& c, Reservoir res) {
    const int d = c.dim();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
    double temperature, gamma;
    switch (res) {
        case Reservoir::Left: temperature = c.temp_left; gamma = c.gamma; break;
        case Reservoir::Right: temperature = c.temp_right; gamma = c.gamma; break;
        default:
            if (!c.aux_bath) throw AuxBathUnsupported("reservoir_generator: no aux_bath configured");
            temperature = c.aux_bath->temp_aux;
            gamma = c.aux_bath->gamma_aux;
            break;
    }
    for (const Transition& t : transitions(c, res)) detail::add_channel(M, t, temperature, gamma);
    return {d, std::move(M)};
}

/// Full population generator over all 2^(N+2) basis states: left + right
/// blocks, plus the auxiliary-bath block when configured.  Without aux_bath
/// the kernel has dimension 2^N (one conserved weight per subspace); with it
/// (N = 1) the chain is irreducible and the kernel is one-dimensional.
inline RateGenerator full_generator(const DiodeConfig& c) {
    const int d = c.dim();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
    for (const Transition& t : left_transitions(c)) detail::add_channel(M, t, c.temp_left, c.gamma);
    for (const Transition& t : right_transitions(c)) detail::add_channel(M, t, c.temp_right, c.gamma);
    if (c.aux_bath)
        for (const Transition& t : aux_transitions(c))
            detail::add_channel(M, t, c.aux_bath->temp_aux, c.aux_bath->gamma_aux);
    return {d, std::move(M)};
}

}  // namespace qtd
