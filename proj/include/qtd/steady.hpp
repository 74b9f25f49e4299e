#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtd/basis.hpp"
#include "qtd/config.hpp"
#include "qtd/errors.hpp"
#include "qtd/rates.hpp"

namespace qtd {

/// Initial state of the auxiliary atoms.  Classical weights select the
/// conserved population mass p_m of each independent subspace; per-atom pure
/// amplitudes additionally carry coherence (meaningful for dynamics only —
/// steady-state work reduces them to classical weights).
struct AuxPreparation {
    enum class Kind { AllExcited, AllGround, ClassicalWeights, ProductPure };
    Kind kind = Kind::AllGround;
    std::vector<double> weights;                 ///< ClassicalWeights: 2^N entries over bitmasks
    std::vector<std::complex<double>> alpha;     ///< ProductPure: excited amplitude per atom
    std::vector<std::complex<double>> beta;      ///< ProductPure: ground amplitude per atom

    static AuxPreparation all_excited() { return {Kind::AllExcited, {}, {}, {}}; }
    static AuxPreparation all_ground() { return {Kind::AllGround, {}, {}, {}}; }
    static AuxPreparation classical(std::vector<double> w) {
        return {Kind::ClassicalWeights, std::move(w), {}, {}};
    }
    /// A single definite auxiliary configuration m in [1, 2^N].
    static AuxPreparation definite(int m, int n_subspaces) {
        std::vector<double> w(static_cast<std::size_t>(n_subspaces), 0.0);
        w[static_cast<std::size_t>(m - 1)] = 1.0;
        return classical(std::move(w));
    }
    static AuxPreparation product_pure(std::vector<std::complex<double>> a,
                                       std::vector<std::complex<double>> b) {
        return {Kind::ProductPure, {}, std::move(a), std::move(b)};
    }

    /// Reduce to per-subspace weights p_m (bitmask order; m = 1 all-excited).
    std::vector<double> subspace_weights(const DiodeConfig& c) const {
        const int M = c.n_subspaces();
        std::vector<double> w(static_cast<std::size_t>(M), 0.0);
        switch (kind) {
            case Kind::AllExcited: w.front() = 1.0; break;
            case Kind::AllGround: w.back() = 1.0; break;
            case Kind::ClassicalWeights: {
                if (static_cast<int>(weights.size()) != M)
                    throw LengthMismatch("preparation weights: expected " + std::to_string(M)
                                         + " entries, got " + std::to_string(weights.size()));
                double sum = 0.0;
                for (double v : weights) {
                    if (v < -1e-12) throw DomainError("preparation weights must be nonnegative");
                    sum += v;
                }
                if (std::abs(sum - 1.0) > 1e-12)
                    throw DomainError("preparation weights must sum to 1, got "
                                      + std::to_string(sum));
                for (int m = 0; m < M; ++m) w[static_cast<std::size_t>(m)] = std::max(0.0, weights[static_cast<std::size_t>(m)]);
                break;
            }
            case Kind::ProductPure: {
                if (static_cast<int>(alpha.size()) != c.n_aux
                    || static_cast<int>(beta.size()) != c.n_aux)
                    throw LengthMismatch("product amplitudes: expected one (alpha, beta) per atom");
                for (int a = 0; a < c.n_aux; ++a) {
                    const double norm = std::norm(alpha[static_cast<std::size_t>(a)]) + std::norm(beta[static_cast<std::size_t>(a)]);
                    if (std::abs(norm - 1.0) > 1e-12)
                        throw DomainError("atom amplitude norm |alpha|^2+|beta|^2 = "
                                          + std::to_string(norm) + " is not 1");
                }
                for (int m = 1; m <= M; ++m) {
                    double p = 1.0;
                    for (int a = 1; a <= c.n_aux; ++a) {
                        const bool excited = z_sign(m, c.n_aux, a - 1) > 0;
                        p *= excited ? std::norm(alpha[static_cast<std::size_t>(a - 1)])
                                     : std::norm(beta[static_cast<std::size_t>(a - 1)]);
                    }
                    w[static_cast<std::size_t>(m - 1)] = p;
                }
                break;
            }
        }
        return w;
    }
};

/// Closed-form steady populations of independent subspace m (normalized).
/// Nonnegative, sum to 1; homogeneous of degree 0 in gamma.
inline Eigen::Vector4d steady_subspace_analytic(const DiodeConfig& c, int m) {
    const SubspaceRates r = subspace_rates(c, m);
    Eigen::Vector4d v;
    v[0] = r.jl_bot_p * r.jr_top_p * (r.jl_top_p + r.jr_bot_m)
         + r.jl_top_p * r.jr_bot_p * (r.jl_bot_m + r.jr_top_p);
    v[1] = r.jl_top_p * r.jr_top_m * (r.jl_bot_p + r.jr_bot_p)
         + r.jl_bot_p * r.jr_bot_m * (r.jl_top_m + r.jr_top_m);
    v[2] = r.jl_top_m * r.jr_top_p * (r.jl_bot_p + r.jr_bot_p)
         + r.jl_bot_m * r.jr_bot_p * (r.jl_top_m + r.jr_top_m);
    v[3] = r.jl_bot_m * r.jr_top_m * (r.jl_top_p + r.jr_bot_m)
         + r.jl_top_m * r.jr_bot_m * (r.jl_bot_m + r.jr_top_p);
    return v / v.sum();
}

/// Closed-form steady cycle rate of subspace m: the common net transition
/// rate around the four-level cycle, oriented as net emission into the left
/// bath through the (rho_11, rho_33) pair.  King-Altman form
///   Gamma_m = 2 (Pi_fwd - Pi_bwd) / N_tilde
/// over the same unnormalized normalizer N_tilde as the closed-form state
/// above (the sum of the four spanning-tree weights); numerically stable
/// (no population cancellation).  The left current is
/// Q_L = -4 g_LR sum_m p_m Gamma_m.
inline double cycle_rate_analytic(const DiodeConfig& c, int m) {
    const SubspaceRates r = subspace_rates(c, m);
    const double fwd = r.jl_top_m * r.jr_bot_m * r.jl_bot_p * r.jr_top_p;
    const double bwd = r.jl_top_p * r.jr_bot_p * r.jl_bot_m * r.jr_top_m;
    Eigen::Vector4d v;
    v[0] = r.jl_bot_p * r.jr_top_p * (r.jl_top_p + r.jr_bot_m)
         + r.jl_top_p * r.jr_bot_p * (r.jl_bot_m + r.jr_top_p);
    v[1] = r.jl_top_p * r.jr_top_m * (r.jl_bot_p + r.jr_bot_p)
         + r.jl_bot_p * r.jr_bot_m * (r.jl_top_m + r.jr_top_m);
    v[2] = r.jl_top_m * r.jr_top_p * (r.jl_bot_p + r.jr_bot_p)
         + r.jl_bot_m * r.jr_bot_p * (r.jl_top_m + r.jr_top_m);
    v[3] = r.jl_bot_m * r.jr_top_m * (r.jl_top_p + r.jr_bot_m)
         + r.jl_top_m * r.jr_bot_m * (r.jl_bot_m + r.jr_top_p);
    return 2.0 * (fwd - bwd) / v.sum();
}

/// Heat current flowing from reservoir `res` into the system for population
/// vector p (full basis order): sum over the reservoir's transitions of
/// bohr_frequency times the net upward rate.  Equal to E . (M_res p) but
/// never materializes a dense generator.
inline double heat_current_populations(const DiodeConfig& c, Reservoir res,
                                       const Eigen::VectorXd& p) {
    double temperature, gamma;
    switch (res) {
        case Reservoir::Left: temperature = c.temp_left; gamma = c.gamma; break;
        case Reservoir::Right: temperature = c.temp_right; gamma = c.gamma; break;
        default:
            if (!c.aux_bath) return 0.0;
            temperature = c.aux_bath->temp_aux;
            gamma = c.aux_bath->gamma_aux;
            break;
    }
    double q = 0.0;
    for (const Transition& t : transitions(c, res)) {
        const double jm = spectral_rate(-t.bohr_frequency, temperature, gamma);
        const double jp = spectral_rate(+t.bohr_frequency, temperature, gamma);
        for (const auto& [u, l] : t.pairs)
            q += t.bohr_frequency * 2.0 * (jp * p[l - 1] - jm * p[u - 1]);
    }
    return q;
}

/// Steady-state solve result.
struct SteadyReport {
    Eigen::VectorXd populations;                       ///< full basis order, sums to 1
    std::vector<Eigen::Vector4d> subspace_populations; ///< conditional (normalized) per m
    std::vector<double> cycle_rates;                   ///< Gamma_m^N per m (empty with aux bath)
    double q_left = 0.0;
    double q_right = 0.0;
    double q_aux = 0.0;                                ///< zero without an auxiliary bath
    double residual = 0.0;                             ///< max |(M p)_i| over solved blocks
    double generator_norm = 0.0;                       ///< max |entry| over solved blocks
    bool weights_defaulted = false;                    ///< AllGround fallback was applied
};

namespace detail {

/// Solve M x = 0, 1.x = 1 for an irreducible generator block by replacing the
/// first row with the normalization row.
inline Eigen::VectorXd kernel_unit_solve(const Eigen::MatrixXd& M) {
    const auto n = M.rows();
    Eigen::MatrixXd B = M;
    B.row(0).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs[0] = 1.0;
    return B.partialPivLu().solve(rhs);
}

}  // namespace detail

/// Strict generator-level steady solve.
///
/// The kernel of a full generator has dimension 2^N without an auxiliary
/// bath (one conserved mass per subspace) and dimension 1 with one.  Weights
/// are mandatory exactly when the kernel is degenerate: supplying them for a
/// unique steady state, or omitting them for a degenerate one, raises
/// KernelDimensionMismatch.  Each irreducible block of the supplied
/// generator is solved densely with one row replaced by the normalization
/// row; the residual against the original generator is checked.
inline Eigen::VectorXd steady_kernel(const DiodeConfig& c, const RateGenerator& gen,
                                     std::optional<std::vector<double>> weights
                                     = std::nullopt) {
    if (gen.dim != c.dim())
        throw KernelDimensionMismatch("generator dimension " + std::to_string(gen.dim)
                                      + " does not match config dimension "
                                      + std::to_string(c.dim()));
    const double norm = gen.entries.cwiseAbs().maxCoeff();
    Eigen::VectorXd p = Eigen::VectorXd::Zero(gen.dim);
    if (c.aux_bath) {
        if (weights)
            throw KernelDimensionMismatch(
                "supplied weights but the steady state is unique (one-dimensional kernel)");
        p = detail::kernel_unit_solve(gen.entries);
    } else {
        const int M = c.n_subspaces();
        if (!weights) {
            if (M > 1)
                throw KernelDimensionMismatch(
                    "kernel dimension " + std::to_string(M)
                    + " > 1: subspace weights are required to select a steady state");
            weights = std::vector<double>{1.0};
        }
        const std::vector<double> w = AuxPreparation::classical(*weights).subspace_weights(c);
        Eigen::Matrix4d block;
        for (int m = 1; m <= M; ++m) {
            const SubspaceIndices s = subspace_indices(c, m);
            const std::array<int, 4> idx{s.i1 - 1, s.i2 - 1, s.i3 - 1, s.i4 - 1};
            for (int r = 0; r < 4; ++r)
                for (int cc = 0; cc < 4; ++cc) block(r, cc) = gen.entries(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(cc)]);
            const Eigen::VectorXd v = detail::kernel_unit_solve(block);
            for (int r = 0; r < 4; ++r) p[idx[static_cast<std::size_t>(r)]] = w[static_cast<std::size_t>(m - 1)] * v[r];
        }
    }
    const double residual = (gen.entries * p).cwiseAbs().maxCoeff();
    if (residual > 1e-10 * norm)
        throw NonConvergence("steady-state residual " + std::to_string(residual)
                             + " exceeds 1e-10 * generator norm");
    return p;
}

/// Numeric steady state (config-level convenience).
///
/// Without an auxiliary bath the kernel of the full generator has dimension
/// 2^N; the preparation's classical weights select the conserved mass of each
/// subspace, and each 4x4 block is solved directly (one row replaced by the
/// normalization row).  When no preparation is given, AllGround is used and
/// flagged in the report.  With an auxiliary bath the steady state is unique;
/// supplying weights there raises KernelDimensionMismatch.
inline SteadyReport steady_numeric(const DiodeConfig& c,
                                   std::optional<AuxPreparation> prep = std::nullopt) {
    SteadyReport rep;
    const int d = c.dim();
    rep.populations = Eigen::VectorXd::Zero(d);
    if (c.aux_bath) {
        if (prep)
            throw KernelDimensionMismatch(
                "the dissipative-auxiliary steady state is unique; do not supply weights");
        const RateGenerator G = full_generator(c);
        const Eigen::VectorXd p = detail::kernel_unit_solve(G.entries);
        rep.populations = p;
        rep.residual = (G.entries * p).cwiseAbs().maxCoeff();
        rep.generator_norm = G.entries.cwiseAbs().maxCoeff();
        // conditional pair states given the auxiliary configuration
        for (int m = 1; m <= c.n_subspaces(); ++m) {
            const SubspaceIndices s = subspace_indices(c, m);
            Eigen::Vector4d v{p[s.i1 - 1], p[s.i2 - 1], p[s.i3 - 1], p[s.i4 - 1]};
            const double mass = v.sum();
            rep.subspace_populations.push_back(mass > 0.0 ? Eigen::Vector4d(v / mass) : v);
        }
    } else {
        std::vector<double> w;
        if (prep) {
            w = prep->subspace_weights(c);
        } else {
            w.assign(static_cast<std::size_t>(c.n_subspaces()), 0.0);
            w.back() = 1.0;
            rep.weights_defaulted = true;
        }
        for (int m = 1; m <= c.n_subspaces(); ++m) {
            const RateGenerator B = subspace_generator(c, m);
            const Eigen::VectorXd v = detail::kernel_unit_solve(B.entries);
            rep.subspace_populations.push_back(v);
            rep.cycle_rates.push_back(cycle_rate_analytic(c, m));
            rep.residual = std::max(rep.residual, (B.entries * v).cwiseAbs().maxCoeff());
            rep.generator_norm = std::max(rep.generator_norm, B.entries.cwiseAbs().maxCoeff());
            const SubspaceIndices s = subspace_indices(c, m);
            const double wm = w[static_cast<std::size_t>(m - 1)];
            rep.populations[s.i1 - 1] = wm * v[0];
            rep.populations[s.i2 - 1] = wm * v[1];
            rep.populations[s.i3 - 1] = wm * v[2];
            rep.populations[s.i4 - 1] = wm * v[3];
        }
    }
    if (rep.residual > 1e-10 * rep.generator_norm)
        throw NonConvergence("steady-state residual " + std::to_string(rep.residual)
                             + " exceeds 1e-10 * generator norm");
    rep.q_left = heat_current_populations(c, Reservoir::Left, rep.populations);
    rep.q_right = heat_current_populations(c, Reservoir::Right, rep.populations);
    rep.q_aux = c.aux_bath ? heat_current_populations(c, Reservoir::Aux, rep.populations) : 0.0;
    return rep;
}

}  // namespace qtd
