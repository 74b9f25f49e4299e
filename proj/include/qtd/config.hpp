#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qtd/errors.hpp"

namespace qtd {

/// Optional heat bath attached to the auxiliary atom (supported for n_aux = 1).
struct AuxBath {
    double gamma_aux = 0.0;  ///< dissipation rate gamma_1 > 0
    double temp_aux = 0.0;   ///< bath temperature T_1 > 0
};

/// All physical parameters of the two-atom diode with N auxiliary atoms,
/// in hbar = k_B = 1 units.  Construct via validate_config().
struct DiodeConfig {
    int n_aux = 0;                    ///< number of auxiliary atoms N >= 0
    double omega_left = 0.0;          ///< left transition frequency omega_L > 0
    double omega_right = 0.0;         ///< right transition frequency omega_R > 0
    std::vector<double> omega_aux;    ///< auxiliary frequencies omega_a > 0 (N entries)
    double g_lr = 0.0;                ///< left-right coupling g_LR
    std::vector<double> g_la;         ///< left-aux couplings g_La (N entries)
    double gamma = 0.0;               ///< flat dissipation rate gamma > 0 (left/right baths)
    double temp_left = 0.0;           ///< T_L > 0
    double temp_right = 0.0;          ///< T_R > 0
    std::optional<AuxBath> aux_bath;  ///< dissipative-auxiliary variant (n_aux = 1 only)

    /// Hilbert-space dimension 2^(N+2).
    int dim() const { return 1 << (n_aux + 2); }
    /// Number of independent four-level subspaces, 2^N.
    int n_subspaces() const { return 1 << n_aux; }

    /// Copy with the two bath temperatures exchanged (reverse-bias configuration).
    DiodeConfig swapped_temperatures() const {
        DiodeConfig c = *this;
        std::swap(c.temp_left, c.temp_right);
        return c;
    }
};

namespace detail {

inline void require_positive(double v, const char* name, const char* error_kind) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << name << " must be positive and finite, got " << v;
        if (std::string(error_kind) == "temperature") throw NonPositiveTemperature(os.str());
        if (std::string(error_kind) == "rate") throw NonPositiveRate(os.str());
        throw DomainError(os.str());
    }
}

}  // namespace detail

/// Validate raw parameters and return a checked DiodeConfig.
///
/// Enforces: positive temperatures, rates and bare frequencies; list lengths
/// equal to n_aux; strict positivity of every left Bohr frequency
/// omega_L +- 2 g_LR +- 2 g_L1 ... +- 2 g_LN (checked via the most negative
/// combination omega_L - 2|g_LR| - sum 2|g_La|), of both right Bohr
/// frequencies omega_R +- 2 g_LR, and - with aux_bath set - of the
/// auxiliary Bohr frequencies omega_1 +- 2 g_L1.
inline DiodeConfig validate_config(DiodeConfig raw) {
    if (raw.n_aux < 0) throw DomainError("n_aux must be nonnegative");
    if (static_cast<int>(raw.omega_aux.size()) != raw.n_aux) {
        std::ostringstream os;
        os << "omega_aux has " << raw.omega_aux.size() << " entries, expected n_aux = "
           << raw.n_aux;
        throw LengthMismatch(os.str());
    }
    if (static_cast<int>(raw.g_la.size()) != raw.n_aux) {
        std::ostringstream os;
        os << "g_la has " << raw.g_la.size() << " entries, expected n_aux = " << raw.n_aux;
        throw LengthMismatch(os.str());
    }
    detail::require_positive(raw.temp_left, "temp_left", "temperature");
    detail::require_positive(raw.temp_right, "temp_right", "temperature");
    detail::require_positive(raw.gamma, "gamma", "rate");
    detail::require_positive(raw.omega_left, "omega_left", "frequency");
    detail::require_positive(raw.omega_right, "omega_right", "frequency");
    for (int a = 0; a < raw.n_aux; ++a)
        detail::require_positive(raw.omega_aux[a], "omega_aux", "frequency");
    if (!std::isfinite(raw.g_lr)) throw DomainError("g_lr must be finite");
    for (double g : raw.g_la)
        if (!std::isfinite(g)) throw DomainError("g_la entries must be finite");

    // left Bohr frequencies: the smallest of omega_L +- 2g_LR +- 2g_La...
    double spread = 2.0 * std::abs(raw.g_lr);
    for (double g : raw.g_la) spread += 2.0 * std::abs(g);
    if (!(raw.omega_left - spread > 0.0)) {
        std::ostringstream os;
        os << "left Bohr frequency omega_L - 2|g_LR| - sum 2|g_La| = "
           << raw.omega_left - spread << " is not positive";
        throw NonPositiveBohrFrequency(os.str());
    }
    if (!(raw.omega_right - 2.0 * std::abs(raw.g_lr) > 0.0)) {
        std::ostringstream os;
        os << "right Bohr frequency omega_R - 2|g_LR| = "
           << raw.omega_right - 2.0 * std::abs(raw.g_lr) << " is not positive";
        throw NonPositiveBohrFrequency(os.str());
    }
    if (raw.aux_bath) {
        if (raw.n_aux != 1)
            throw AuxBathUnsupported("aux_bath requires exactly one auxiliary atom, got n_aux = "
                                     + std::to_string(raw.n_aux));
        detail::require_positive(raw.aux_bath->gamma_aux, "gamma_aux", "rate");
        detail::require_positive(raw.aux_bath->temp_aux, "temp_aux", "temperature");
        // auxiliary Bohr frequencies omega_1 +- 2 g_L1 (spectrum differences
        // across the aux-bit flip) must be positive as well
        if (!(raw.omega_aux[0] - 2.0 * std::abs(raw.g_la[0]) > 0.0)) {
            std::ostringstream os;
            os << "auxiliary Bohr frequency omega_1 - 2|g_L1| = "
               << raw.omega_aux[0] - 2.0 * std::abs(raw.g_la[0]) << " is not positive";
            throw NonPositiveBohrFrequency(os.str());
        }
    }
    return raw;
}

/// Convenience builder for configs whose auxiliary atoms share one frequency
/// and one coupling (the common case in all figure presets).
inline DiodeConfig uniform_config(int n_aux, double omega_left, double omega_right,
                                  double omega_aux, double g_lr, double g_la, double gamma,
                                  double temp_left, double temp_right,
                                  std::optional<AuxBath> aux_bath = std::nullopt) {
    DiodeConfig c;
    c.n_aux = n_aux;
    c.omega_left = omega_left;
    c.omega_right = omega_right;
    c.omega_aux.assign(static_cast<std::size_t>(n_aux), omega_aux);
    c.g_lr = g_lr;
    c.g_la.assign(static_cast<std::size_t>(n_aux), g_la);
    c.gamma = gamma;
    c.temp_left = temp_left;
    c.temp_right = temp_right;
    c.aux_bath = aux_bath;
    return validate_config(std::move(c));
}

}  // namespace qtd
