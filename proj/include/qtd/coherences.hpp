#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "qtd/basis.hpp"
#include "qtd/config.hpp"
#include "qtd/rates.hpp"
#include "qtd/transitions.hpp"

namespace qtd {

/// One coupled pair family of off-diagonal elements.  The right atom's grouped
/// jump operators are the only rank->1 channels, so a coherence between two
/// same-sector states (both L=e,R=e or both L=g,R=e at different auxiliary
/// configurations i < j) couples to exactly one partner (the R-flipped pair),
/// giving 2x2 families:
///
///   sector 'A' (L = e):  d/dt (rho_{i,j}, rho_{i+2^N, j+2^N})
///   sector 'B' (L = g):  d/dt (rho_{i+2^{N+1}, j+2^{N+1}}, rho_{i+3*2^N, j+3*2^N})
///
/// Each evolves as  sigma' = (Lambda - i dE I) sigma  with the real decay/feed
/// matrix Lambda and the common unitary phase dE = E_top_left - E_top_right
/// (shared by both rows because flipping R shifts both states' energies
/// equally).  All other coherences are uncoupled scalars decaying at their own
/// eta (see coherence_decay).
struct OffDiagonalBlock {
    int i = 0, j = 0;                       ///< auxiliary configurations, 1 <= i < j <= 2^N
    char sector = 'A';                      ///< 'A' = left atom excited, 'B' = ground
    std::array<std::pair<int, int>, 2> pairs;  ///< basis-index pairs (top, bottom rows)
    Eigen::Matrix2d lambda;                 ///< real decay/feed coefficient matrix
    double phase = 0.0;                     ///< dE: unitary term is -i * phase
};

/// Total secular decay constant eta of the coherence rho_{a,b}: every channel
/// whose jump operator touches a or b contributes J(-omega) per upper-state
/// hit and J(+omega) per lower-state hit.
inline double coherence_decay(const DiodeConfig& c, int a, int b) {
    double eta = 0.0;
    auto accumulate = [&](const std::vector<Transition>& ts, double temperature, double gamma) {
        for (const Transition& t : ts) {
            const double jm = spectral_rate(-t.bohr_frequency, temperature, gamma);
            const double jp = spectral_rate(+t.bohr_frequency, temperature, gamma);
            for (const auto& [u, l] : t.pairs) {
                if (a == u || b == u) eta += jm;
                if (a == l || b == l) eta += jp;
            }
        }
    };
    accumulate(left_transitions(c), c.temp_left, c.gamma);
    accumulate(right_transitions(c), c.temp_right, c.gamma);
    if (c.aux_bath) accumulate(aux_transitions(c), c.aux_bath->temp_aux, c.aux_bath->gamma_aux);
    return eta;
}

/// All 2x2 coherence families: sectors 'A' and 'B' for every auxiliary pair
/// i < j.  Empty for N = 0.  Not defined with an auxiliary bath: its two
/// same-frequency channels would couple coherences across these families, so
/// the 2x2 closure breaks down there.
inline std::vector<OffDiagonalBlock> offdiagonal_blocks(const DiodeConfig& c) {
    if (c.aux_bath)
        throw AuxBathUnsupported(
            "coherence families are only closed without an auxiliary reservoir");
    std::vector<OffDiagonalBlock> out;
    const int M = c.n_subspaces();
    const Spectrum E = spectrum(c);
    for (int i = 1; i < M; ++i) {
        for (int j = i + 1; j <= M; ++j) {
            for (char sector : {'A', 'B'}) {
                OffDiagonalBlock b;
                b.i = i;
                b.j = j;
                b.sector = sector;
                const int base = sector == 'A' ? 0 : 2 * M;
                b.pairs[0] = {i + base, j + base};
                b.pairs[1] = {i + base + M, j + base + M};
                const double jr_m =
                    spectral_rate(-(c.omega_right + (sector == 'A' ? 2.0 : -2.0) * c.g_lr),
                                  c.temp_right, c.gamma);
                const double jr_p =
                    spectral_rate(+(c.omega_right + (sector == 'A' ? 2.0 : -2.0) * c.g_lr),
                                  c.temp_right, c.gamma);
                // diagonal: total decay; the grouped right channel feeds the
                // partner row with 2 J_R instead of only draining
                const double eta_top = coherence_decay(c, b.pairs[0].first, b.pairs[0].second);
                const double eta_bot = coherence_decay(c, b.pairs[1].first, b.pairs[1].second);
                b.lambda << -eta_top, 2.0 * jr_p, 2.0 * jr_m, -eta_bot;
                b.phase = E.at(b.pairs[0].first) - E.at(b.pairs[0].second);
                out.push_back(std::move(b));
            }
        }
    }
    return out;
}

}  // namespace qtd
