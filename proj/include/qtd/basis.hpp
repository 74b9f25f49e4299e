#pragma once

#include <vector>

#include "qtd/config.hpp"
#include "qtd/errors.hpp"

namespace qtd {

/// Basis-index conventions (1-based, matching the subspace labels m, m+2^N,
/// m+2^(N+1), m+2^(N+1)+2^N):
///
///   index i in [1, 2^(N+2)]; the bits of (i-1), most-significant first, are
///   (L, R, a_1, ..., a_N); bit value 0 means excited |e> (z = +1) and
///   1 means ground |g> (z = -1).  Index 1 is |ee...e>, index 2^(N+2) is
///   |gg...g>.

/// Pauli-z sign (+1 excited, -1 ground) of atom `bit_pos` counted from the
/// most significant of `n_bits` bits, for 1-based index `index`.
inline int z_sign(int index, int n_bits, int bit_pos) {
    const int bit = ((index - 1) >> (n_bits - 1 - bit_pos)) & 1;
    return 1 - 2 * bit;
}

/// z-sign of the left atom for a full basis index.
inline int z_left(const DiodeConfig& c, int index) { return z_sign(index, c.n_aux + 2, 0); }
/// z-sign of the right atom for a full basis index.
inline int z_right(const DiodeConfig& c, int index) { return z_sign(index, c.n_aux + 2, 1); }
/// z-sign of auxiliary atom a (1-based) for a full basis index.
inline int z_aux(const DiodeConfig& c, int index, int a) {
    return z_sign(index, c.n_aux + 2, 1 + a);
}

/// z-signs of the N auxiliary atoms for subspace bitmask m in [1, 2^N]
/// (m enumerates auxiliary configurations; m = 1 is all-excited).
inline std::vector<int> aux_signs(const DiodeConfig& c, int m) {
    if (m < 1 || m > c.n_subspaces())
        throw IndexOutOfRange("subspace bitmask m = " + std::to_string(m)
                              + " outside [1, " + std::to_string(c.n_subspaces()) + "]");
    std::vector<int> z(static_cast<std::size_t>(c.n_aux));
    for (int a = 1; a <= c.n_aux; ++a) z[static_cast<std::size_t>(a - 1)] = z_sign(m, c.n_aux, a - 1);
    return z;
}

/// The four basis indices (rho_11..rho_44 order) of independent subspace m:
/// (L=e,R=e), (L=e,R=g), (L=g,R=e), (L=g,R=g) at fixed auxiliary configuration.
struct SubspaceIndices {
    int i1, i2, i3, i4;
};

inline SubspaceIndices subspace_indices(const DiodeConfig& c, int m) {
    if (m < 1 || m > c.n_subspaces())
        throw IndexOutOfRange("subspace bitmask m = " + std::to_string(m)
                              + " outside [1, " + std::to_string(c.n_subspaces()) + "]");
    const int M = c.n_subspaces();
    return {m, m + M, m + 2 * M, m + 3 * M};
}

/// Diagonal Hamiltonian eigenvalues E_i, ordered by basis index.
struct Spectrum {
    std::vector<double> energies;  ///< E_i at slot i-1

    double at(int index) const { return energies[static_cast<std::size_t>(index - 1)]; }
};

/// Energy of one basis state:
///   E = w_L z_L/2 + w_R z_R/2 + sum_a w_a z_a/2 + g_LR z_L z_R + sum_a g_La z_L z_a.
inline double state_energy(const DiodeConfig& c, int index) {
    const int zl = z_left(c, index);
    const int zr = z_right(c, index);
    double e = 0.5 * c.omega_left * zl + 0.5 * c.omega_right * zr + c.g_lr * zl * zr;
    for (int a = 1; a <= c.n_aux; ++a) {
        const int za = z_aux(c, index, a);
        e += 0.5 * c.omega_aux[static_cast<std::size_t>(a - 1)] * za
             + c.g_la[static_cast<std::size_t>(a - 1)] * zl * za;
    }
    return e;
}

/// Full diagonal spectrum.
inline Spectrum spectrum(const DiodeConfig& c) {
    Spectrum s;
    s.energies.resize(static_cast<std::size_t>(c.dim()));
    for (int i = 1; i <= c.dim(); ++i) s.energies[static_cast<std::size_t>(i - 1)] = state_energy(c, i);
    return s;
}

/// Effective left frequency of a definite auxiliary configuration:
///   omega_L' = omega_L + sum_a z_a 2 g_La.
/// All-excited gives omega_L + sum 2 g_La, all-ground omega_L - sum 2 g_La.
inline double effective_left_frequency(const DiodeConfig& c, int m) {
    const std::vector<int> z = aux_signs(c, m);
    double w = c.omega_left;
    for (int a = 0; a < c.n_aux; ++a) w += 2.0 * c.g_la[static_cast<std::size_t>(a)] * z[static_cast<std::size_t>(a)];
    return w;
}

}  // namespace qtd
