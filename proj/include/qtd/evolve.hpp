#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qtd/basis.hpp"
#include "qtd/coherences.hpp"
#include "qtd/config.hpp"
#include "qtd/errors.hpp"
#include "qtd/observables.hpp"
#include "qtd/rates.hpp"
#include "qtd/steady.hpp"

namespace qtd {

/// A full density matrix in the computational basis.
struct DensityState {
    Eigen::MatrixXcd rho;

    int dim() const { return static_cast<int>(rho.rows()); }
    Eigen::VectorXd populations() const { return rho.diagonal().real(); }

    static DensityState from_populations(const Eigen::VectorXd& p) {
        DensityState s;
        s.rho = Eigen::MatrixXcd::Zero(p.size(), p.size());
        s.rho.diagonal() = p.cast<std::complex<double>>();
        return s;
    }
};

/// Enforce the density-matrix invariants (construction-time tolerance 1e-12).
inline void check_density_invariants(const Eigen::MatrixXcd& rho, double tol) {
    if (rho.rows() != rho.cols()) throw InvariantViolation("density matrix is not square");
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol)
        throw InvariantViolation("hermiticity defect " + std::to_string(herm));
    const double trace_defect = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    if (trace_defect > tol)
        throw InvariantViolation("trace defect " + std::to_string(trace_defect));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    const double lambda_min = es.eigenvalues().minCoeff();
    if (lambda_min < -tol)
        throw InvariantViolation("negative eigenvalue " + std::to_string(lambda_min));
}

/// Initial state |e>_L |e>_R (x) (auxiliary preparation).  ProductPure keeps
/// the pure superposition (with its coherences); the other kinds produce the
/// corresponding diagonal mixture over definite auxiliary configurations.
inline DensityState initial_product_state(const DiodeConfig& c, const AuxPreparation& prep) {
    const int d = c.dim();
    DensityState s;
    s.rho = Eigen::MatrixXcd::Zero(d, d);
    if (prep.kind == AuxPreparation::Kind::ProductPure) {
        prep.subspace_weights(c);  // validates lengths and normalization
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
        const int M = c.n_subspaces();
        for (int m = 1; m <= M; ++m) {
            // basis index m has L and R excited with auxiliary configuration m
            std::complex<double> amp = 1.0;
            for (int a = 1; a <= c.n_aux; ++a)
                amp *= z_sign(m, c.n_aux, a - 1) > 0 ? prep.alpha[static_cast<std::size_t>(a - 1)]
                                                     : prep.beta[static_cast<std::size_t>(a - 1)];
            psi[m - 1] = amp;
        }
        s.rho = psi * psi.adjoint();
    } else {
        const std::vector<double> w = prep.subspace_weights(c);
        for (int m = 1; m <= c.n_subspaces(); ++m)
            s.rho(m - 1, m - 1) = w[static_cast<std::size_t>(m - 1)];
    }
    return s;
}

/// Instantaneous heat currents tr{H_S L_mu[rho]}.  H_S is diagonal in the
/// computational basis and the secular dissipators map populations to
/// populations, so only the real diagonal enters.
inline HeatCurrents heat_current_dynamic(const DiodeConfig& c, const DensityState& s) {
    const Eigen::VectorXd p = s.populations();
    return {heat_current_populations(c, Reservoir::Left, p),
            heat_current_populations(c, Reservoir::Right, p),
            c.aux_bath ? heat_current_populations(c, Reservoir::Aux, p) : 0.0};
}

namespace detail {

/// exp(M) for a 2x2 complex matrix, via M = s I + K with tr K = 0 and
/// K^2 = q^2 I:  exp(M) = e^s (cosh(q) I + sinhc(q) K).
inline Eigen::Matrix2cd exp2x2(const Eigen::Matrix2cd& m) {
    using C = std::complex<double>;
    const C s = 0.5 * (m(0, 0) + m(1, 1));
    Eigen::Matrix2cd k = m;
    k(0, 0) -= s;
    k(1, 1) -= s;
    const C q2 = k(0, 0) * k(0, 0) + k(0, 1) * k(1, 0);
    const C q = std::sqrt(q2);
    C cosh_q, sinhc_q;
    if (std::abs(q) < 1e-6) {
        cosh_q = 1.0 + q2 / 2.0 + q2 * q2 / 24.0;
        sinhc_q = 1.0 + q2 / 6.0 + q2 * q2 / 120.0;
    } else {
        cosh_q = std::cosh(q);
        sinhc_q = std::sinh(q) / q;
    }
    return std::exp(s) * (cosh_q * Eigen::Matrix2cd::Identity() + sinhc_q * k);
}

/// One adaptive Dormand-Prince 5(4) integration of p' = G p from t0 to t1.
/// Absolute tolerance 1e-10, relative 1e-8, per the solver design decision.
inline void advance_populations(const Eigen::MatrixXd& gen, Eigen::VectorXd& p, double t0,
                                double t1) {
    static constexpr double kAtol = 1e-10, kRtol = 1e-8;
    if (t1 <= t0) return;
    const auto rhs = [&gen](const Eigen::VectorXd& y) -> Eigen::VectorXd { return gen * y; };
    double t = t0;
    const double scale = std::max(gen.cwiseAbs().maxCoeff(), 1e-300);
    double h = std::min(t1 - t0, 0.1 / scale);
    Eigen::VectorXd k1 = rhs(p);
    while (t < t1) {
        h = std::min(h, t1 - t);
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw StepSizeUnderflow("integration step " + std::to_string(h) + " at t = "
                                    + std::to_string(t));
        const Eigen::VectorXd k2 = rhs(p + h * (1.0 / 5.0) * k1);
        const Eigen::VectorXd k3 = rhs(p + h * ((3.0 / 40.0) * k1 + (9.0 / 40.0) * k2));
        const Eigen::VectorXd k4 =
            rhs(p + h * ((44.0 / 45.0) * k1 - (56.0 / 15.0) * k2 + (32.0 / 9.0) * k3));
        const Eigen::VectorXd k5 =
            rhs(p + h * ((19372.0 / 6561.0) * k1 - (25360.0 / 2187.0) * k2
                         + (64448.0 / 6561.0) * k3 - (212.0 / 729.0) * k4));
        const Eigen::VectorXd k6 =
            rhs(p + h * ((9017.0 / 3168.0) * k1 - (355.0 / 33.0) * k2 + (46732.0 / 5247.0) * k3
                         + (49.0 / 176.0) * k4 - (5103.0 / 18656.0) * k5));
        const Eigen::VectorXd y5 = p + h * ((35.0 / 384.0) * k1 + (500.0 / 1113.0) * k3
                                            + (125.0 / 192.0) * k4 - (2187.0 / 6784.0) * k5
                                            + (11.0 / 84.0) * k6);
        const Eigen::VectorXd k7 = rhs(y5);
        const Eigen::VectorXd y4 = p + h * ((5179.0 / 57600.0) * k1 + (7571.0 / 16695.0) * k3
                                            + (393.0 / 640.0) * k4 - (92097.0 / 339200.0) * k5
                                            + (187.0 / 2100.0) * k6 + (1.0 / 40.0) * k7);
        double err = 0.0;
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            const double tol = kAtol + kRtol * std::max(std::abs(p[i]), std::abs(y5[i]));
            const double e = (y5[i] - y4[i]) / tol;
            err += e * e;
        }
        err = std::sqrt(err / static_cast<double>(p.size()));
        if (err <= 1.0) {
            t += h;
            p = y5;
            k1 = k7;  // first-same-as-last
        }  // on rejection p and k1 are unchanged; only h shrinks below
        const double factor = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(factor, 0.2, 5.0);
    }
}

}  // namespace detail

/// Trajectory of the master equation at the requested times.  `initial` is
/// the state at time_grid.front(); the grid must be nondecreasing.
///
/// The generator is block-structured and the integration exploits it:
///   - populations follow the rate generator via adaptive Dormand-Prince 5(4)
///     (absolute tolerance 1e-10, relative 1e-8);
///   - each 2x2 coherence family evolves under its constant matrix
///     Lambda - i dE, propagated exactly per grid interval;
///   - every remaining coherence decays as an uncoupled scalar
///     exp((-i dE - eta) dt), also exact.
/// With an auxiliary bath, only diagonal initial states are supported (the
/// 2x2 family closure does not hold there); populations then include the
/// auxiliary channels.
inline std::vector<DensityState> evolve(const DiodeConfig& c, const DensityState& initial,
                                        const std::vector<double>& time_grid) {
    if (c.n_aux > 6)
        throw DomainError("time evolution supports at most 6 auxiliary atoms (dimension 256)");
    if (time_grid.empty()) throw DomainError("time grid must contain at least one point");
    for (std::size_t k = 1; k < time_grid.size(); ++k)
        if (time_grid[k] < time_grid[k - 1])
            throw DomainError("time grid must be nondecreasing");
    const int d = c.dim();
    if (initial.dim() != d)
        throw InvariantViolation("initial state dimension " + std::to_string(initial.dim())
                                 + " does not match config dimension " + std::to_string(d));
    check_density_invariants(initial.rho, 1e-12);

    // split the state: populations, 2x2 families, scalar coherences
    Eigen::VectorXd p = initial.rho.diagonal().real();
    double offdiag_max = 0.0;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
            offdiag_max = std::max(offdiag_max, std::abs(initial.rho(a, b)));
    if (c.aux_bath && offdiag_max > 0.0)
        throw AuxBathUnsupported(
            "evolution with an auxiliary reservoir requires a diagonal initial state");

    std::vector<OffDiagonalBlock> blocks;
    std::vector<Eigen::Vector2cd> block_state;
    std::map<std::pair<int, int>, bool> in_family;
    if (!c.aux_bath && offdiag_max > 0.0) {
        blocks = offdiagonal_blocks(c);
        block_state.reserve(blocks.size());
        for (const OffDiagonalBlock& b : blocks) {
            block_state.emplace_back(initial.rho(b.pairs[0].first - 1, b.pairs[0].second - 1),
                                     initial.rho(b.pairs[1].first - 1, b.pairs[1].second - 1));
            in_family[{b.pairs[0].first, b.pairs[0].second}] = true;
            in_family[{b.pairs[1].first, b.pairs[1].second}] = true;
        }
    }
    struct Scalar {
        int a, b;                     // 1-based, a < b
        std::complex<double> value;
        std::complex<double> slope;   // -i dE - eta
    };
    std::vector<Scalar> scalars;
    if (offdiag_max > 0.0 && !c.aux_bath) {
        const Spectrum E = spectrum(c);
        for (int a = 1; a <= d; ++a)
            for (int b = a + 1; b <= d; ++b) {
                if (in_family.count({a, b})) continue;
                const std::complex<double> v = initial.rho(a - 1, b - 1);
                if (v == std::complex<double>(0.0, 0.0)) continue;
                const std::complex<double> slope(-coherence_decay(c, a, b),
                                                 -(E.at(a) - E.at(b)));
                scalars.push_back({a, b, v, slope});
            }
    }

    const RateGenerator gen = full_generator(c);
    const std::complex<double> im(0.0, 1.0);
    std::vector<DensityState> trajectory;
    trajectory.reserve(time_grid.size());

    auto assemble = [&]() {
        DensityState s;
        s.rho = Eigen::MatrixXcd::Zero(d, d);
        s.rho.diagonal() = p.cast<std::complex<double>>();
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            const OffDiagonalBlock& b = blocks[k];
            s.rho(b.pairs[0].first - 1, b.pairs[0].second - 1) = block_state[k][0];
            s.rho(b.pairs[1].first - 1, b.pairs[1].second - 1) = block_state[k][1];
            s.rho(b.pairs[0].second - 1, b.pairs[0].first - 1) = std::conj(block_state[k][0]);
            s.rho(b.pairs[1].second - 1, b.pairs[1].first - 1) = std::conj(block_state[k][1]);
        }
        for (const Scalar& sc : scalars) {
            s.rho(sc.a - 1, sc.b - 1) = sc.value;
            s.rho(sc.b - 1, sc.a - 1) = std::conj(sc.value);
        }
        const double trace_drift = std::abs(s.rho.trace().real() - 1.0);
        if (trace_drift > 1e-8)
            throw InvariantViolation("trace drifted by " + std::to_string(trace_drift));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s.rho, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-8)
            throw InvariantViolation("state developed negativity "
                                     + std::to_string(es.eigenvalues().minCoeff()));
        return s;
    };

    trajectory.push_back(assemble());
    for (std::size_t k = 1; k < time_grid.size(); ++k) {
        const double dt = time_grid[k] - time_grid[k - 1];
        if (dt > 0.0) {
            detail::advance_populations(gen.entries, p, time_grid[k - 1], time_grid[k]);
            for (std::size_t q = 0; q < blocks.size(); ++q) {
                if (block_state[q][0] == 0.0 && block_state[q][1] == 0.0) continue;
                Eigen::Matrix2cd m = blocks[q].lambda.cast<std::complex<double>>();
                m -= im * blocks[q].phase * Eigen::Matrix2cd::Identity();
                block_state[q] = detail::exp2x2(m * dt) * block_state[q];
            }
            for (Scalar& sc : scalars) sc.value *= std::exp(sc.slope * dt);
        }
        trajectory.push_back(assemble());
    }
    return trajectory;
}

}  // namespace qtd
