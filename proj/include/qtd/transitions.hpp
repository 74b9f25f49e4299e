#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qtd/basis.hpp"
#include "qtd/config.hpp"
#include "qtd/errors.hpp"

namespace qtd {

enum class Reservoir { Left, Right, Aux };

inline const char* reservoir_name(Reservoir r) {
    switch (r) {
        case Reservoir::Left: return "Left";
        case Reservoir::Right: return "Right";
        default: return "Aux";
    }
}

/// One secular Bohr transition: a positive frequency and the disjoint
/// (upper, lower) basis-index pairs its jump operator connects.  Transitions
/// with numerically equal frequencies but distinct pair sets are kept
/// separate; cross terms among such degenerate transitions are dropped.
struct Transition {
    Reservoir reservoir;
    double bohr_frequency;                   ///< E_upper - E_lower > 0
    std::vector<std::pair<int, int>> pairs;  ///< (upper, lower) 1-based indices
};

/// Left-atom transitions: 2^(N+1) single-pair operators.  The list index
/// l in [1, 2^(N+1)] equals the upper state's basis index (the configuration
/// of R and the auxiliaries with L = e), and the frequency is
///   omega_{L,l} = omega_L + 2 g_LR z_R + sum_a 2 g_La z_a.
inline std::vector<Transition> left_transitions(const DiodeConfig& c) {
    std::vector<Transition> out;
    const int count = 1 << (c.n_aux + 1);
    out.reserve(static_cast<std::size_t>(count));
    for (int l = 1; l <= count; ++l) {
        // bits of (l-1) over N+1 positions: R, a_1..a_N
        double w = c.omega_left + 2.0 * c.g_lr * z_sign(l, c.n_aux + 1, 0);
        for (int a = 1; a <= c.n_aux; ++a)
            w += 2.0 * c.g_la[static_cast<std::size_t>(a - 1)] * z_sign(l, c.n_aux + 1, a);
        out.push_back({Reservoir::Left, w, {{l, l + count}}});
    }
    return out;
}

/// Right-atom transitions: two grouped operators.  The frequency depends only
/// on the left atom's state: omega_{R,1} = omega_R + 2 g_LR over all 2^N pairs
/// with L = e, omega_{R,2} = omega_R - 2 g_LR with L = g.
inline std::vector<Transition> right_transitions(const DiodeConfig& c) {
    const int M = c.n_subspaces();
    Transition up{Reservoir::Right, c.omega_right + 2.0 * c.g_lr, {}};
    Transition dn{Reservoir::Right, c.omega_right - 2.0 * c.g_lr, {}};
    up.pairs.reserve(static_cast<std::size_t>(M));
    dn.pairs.reserve(static_cast<std::size_t>(M));
    for (int m = 1; m <= M; ++m) {
        up.pairs.emplace_back(m, m + M);
        dn.pairs.emplace_back(m + 2 * M, m + 3 * M);
    }
    return {up, dn};
}

/// Auxiliary-atom transitions for the dissipative-auxiliary variant (N = 1):
/// four single-pair operators obtained by flipping the auxiliary bit.
/// Frequencies are the eigenvalue differences: pairs (1,2) and (3,4) sit at
/// omega_1 + 2 g_L1 (L excited), (5,6) and (7,8) at omega_1 - 2 g_L1
/// (L ground).  Note g_LR cancels exactly in these differences — the
/// auxiliary flip leaves both L and R fixed — so no g_LR term can appear in
/// an auxiliary frequency (the CLI surfaces this in the provenance header of
/// dissipative-auxiliary runs so emitted tables are auditable).
inline std::vector<Transition> aux_transitions(const DiodeConfig& c) {
    if (!c.aux_bath)
        throw AuxBathUnsupported("auxiliary transitions require aux_bath to be configured");
    std::vector<Transition> out;
    out.reserve(4);
    for (int upper : {1, 3, 5, 7}) {
        const int lower = upper + 1;
        const double w = state_energy(c, upper) - state_energy(c, lower);
        out.push_back({Reservoir::Aux, w, {{upper, lower}}});
    }
    return out;
}

/// All transitions of one reservoir.
inline std::vector<Transition> transitions(const DiodeConfig& c, Reservoir r) {
    switch (r) {
        case Reservoir::Left: return left_transitions(c);
        case Reservoir::Right: return right_transitions(c);
        default: return aux_transitions(c);
    }
}

}  // namespace qtd
