#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qtd/basis.hpp"
#include "qtd/config.hpp"
#include "qtd/errors.hpp"
#include "qtd/evolve.hpp"
#include "qtd/observables.hpp"
#include "qtd/steady.hpp"
#include "qtd/table.hpp"

namespace qtd {

inline constexpr const char* kToolVersion = "1.0.0";

/// One plotted line: a config, its preparation, and how to solve it.
struct SeriesSpec {
    std::string label;
    DiodeConfig config;
    std::optional<AuxPreparation> preparation;  ///< absent for dissipative-auxiliary solves
    bool vanishing_aux_dissipation = false;     ///< solve in the gamma_1 -> 0 limit
};

/// A parameter scan over one or more series.
struct SweepSpec {
    std::string parameter;             ///< temp_left | omega_right | p_1 | n_aux | time
    std::vector<double> grid;          ///< resolved values, count >= 2
    std::vector<SeriesSpec> series;
    std::string preset_id;             ///< empty for user documents
    std::vector<std::string> notes;    ///< provenance notes (assumed values etc.)
    std::vector<std::string> plot_hints;
};

inline const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> cols{
        "sweep_value",  "series_id",     "q_l_forward",      "q_l_reverse",
        "q_r_forward",  "rectification", "omega_l_effective"};
    return cols;
}

namespace detail {

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        v[static_cast<std::size_t>(k)] = a + (b - a) * static_cast<double>(k) / (n - 1);
    return v;
}

inline std::string config_echo(const DiodeConfig& c) {
    std::string s = "n_aux=" + std::to_string(c.n_aux);
    s += " omega_left=" + format_full(c.omega_left);
    s += " omega_right=" + format_full(c.omega_right);
    s += " omega_aux=";
    for (std::size_t a = 0; a < c.omega_aux.size(); ++a)
        s += (a ? "," : "") + format_full(c.omega_aux[a]);
    if (c.omega_aux.empty()) s += "-";
    s += " g_lr=" + format_full(c.g_lr);
    s += " g_la=";
    for (std::size_t a = 0; a < c.g_la.size(); ++a) s += (a ? "," : "") + format_full(c.g_la[a]);
    if (c.g_la.empty()) s += "-";
    s += " gamma=" + format_full(c.gamma);
    s += " temp_left=" + format_full(c.temp_left);
    s += " temp_right=" + format_full(c.temp_right);
    if (c.aux_bath)
        s += " gamma_aux=" + format_full(c.aux_bath->gamma_aux)
             + " temp_aux=" + format_full(c.aux_bath->temp_aux);
    return s;
}

/// Weight-averaged effective left frequency for a preparation (reduces to the
/// definite-configuration value for a pure bitmask).
inline double averaged_left_frequency(const DiodeConfig& c, const std::vector<double>& w) {
    double s = 0.0;
    for (int m = 1; m <= c.n_subspaces(); ++m)
        s += w[static_cast<std::size_t>(m - 1)] * effective_left_frequency(c, m);
    return s;
}

/// Apply one grid value of `parameter` to a series; returns the config and
/// preparation to solve.  Throws on invalid results (wrapped by the caller).
inline std::pair<DiodeConfig, std::optional<AuxPreparation>> apply_parameter(
    const SeriesSpec& s, const std::string& parameter, double v) {
    DiodeConfig c = s.config;
    std::optional<AuxPreparation> prep = s.preparation;
    if (parameter == "temp_left") {
        c.temp_left = v;
        c = validate_config(std::move(c));
    } else if (parameter == "omega_right") {
        c.omega_right = v;
        c = validate_config(std::move(c));
    } else if (parameter == "n_aux") {
        const double r = std::round(v);
        if (std::abs(v - r) > 1e-9 || r < 0.0)
            throw ValidationError("n_aux grid value " + format_full(v)
                                  + " is not a nonnegative integer");
        const int n = static_cast<int>(r);
        for (std::size_t a = 1; a < c.omega_aux.size(); ++a)
            if (c.omega_aux[a] != c.omega_aux[0] || c.g_la[a] != c.g_la[0])
                throw ValidationError(
                    "n_aux sweeps require uniform omega_aux and g_la in the base config");
        if (n > 0 && c.omega_aux.empty())
            throw ValidationError(
                "n_aux sweeps need one auxiliary frequency/coupling in the base config to "
                "replicate");
        c.n_aux = n;
        c.omega_aux.assign(static_cast<std::size_t>(n), n > 0 ? s.config.omega_aux[0] : 0.0);
        c.g_la.assign(static_cast<std::size_t>(n), n > 0 ? s.config.g_la[0] : 0.0);
        c = validate_config(std::move(c));
        if (prep && (prep->kind == AuxPreparation::Kind::ClassicalWeights
                     || prep->kind == AuxPreparation::Kind::ProductPure))
            throw ValidationError(
                "n_aux sweeps support only the all-excited/all-ground preparations");
    } else if (parameter == "p_1") {
        if (!(v >= 0.0 && v <= 1.0))
            throw ValidationError("p_1 grid value " + format_full(v) + " outside [0, 1]");
        if (c.n_aux == 1 && !c.aux_bath)
            prep = AuxPreparation::classical({v, 1.0 - v});
    } else if (parameter == "time") {
        if (v < 0.0) throw ValidationError("time grid value " + format_full(v) + " is negative");
    } else {
        throw ValidationError("unknown sweep parameter '" + parameter + "'");
    }
    return {std::move(c), std::move(prep)};
}

struct CellResult {
    double q_l_forward = 0.0, q_l_reverse = 0.0, q_r_forward = 0.0;
    double rectification = 0.0, omega_l_effective = 0.0;
};

/// Solve one steady-state cell (forward + temperature-swapped reverse).
inline CellResult steady_cell(const DiodeConfig& c,
                              const std::optional<AuxPreparation>& prep,
                              bool vanishing_aux_dissipation) {
    CellResult r;
    if (vanishing_aux_dissipation) {
        const RectificationResult lim = rectification_aux_limit(c);
        r.q_l_forward = lim.q_forward;
        r.q_l_reverse = lim.q_reverse;
        r.q_r_forward = -lim.q_forward;  // the auxiliary reservoir decouples in the limit
        r.rectification = lim.factor;
        const auto [w_e, w_g] = aux_limit_weights(c);
        r.omega_l_effective = averaged_left_frequency(c, {w_e, w_g});
        return r;
    }
    const SteadyReport fwd = steady_numeric(c, prep);
    const SteadyReport rev = steady_numeric(c.swapped_temperatures(), prep);
    r.q_l_forward = fwd.q_left;
    r.q_l_reverse = rev.q_left;
    r.q_r_forward = fwd.q_right;
    try {
        r.rectification = rectification_factor(r.q_l_forward, r.q_l_reverse, c.gamma);
    } catch (const BothCurrentsZero&) {
        r.rectification = 0.0;  // equilibrium rows stay finite in the table
    }
    std::vector<double> w(static_cast<std::size_t>(c.n_subspaces()), 0.0);
    if (c.aux_bath) {
        for (int m = 1; m <= c.n_subspaces(); ++m) {
            const SubspaceIndices s = subspace_indices(c, m);
            w[static_cast<std::size_t>(m - 1)] = fwd.populations[s.i1 - 1]
                                                 + fwd.populations[s.i2 - 1]
                                                 + fwd.populations[s.i3 - 1]
                                                 + fwd.populations[s.i4 - 1];
        }
    } else if (prep) {
        w = prep->subspace_weights(c);
    } else {
        w.back() = 1.0;
    }
    r.omega_l_effective = averaged_left_frequency(c, w);
    return r;
}

/// Run `count` jobs over `threads` workers with static striding; the first
/// failure (by job index) aborts with its context prepended.
template <typename Fn>
inline void parallel_for(int count, int threads, Fn&& fn,
                         const std::vector<std::string>& contexts) {
    std::vector<std::string> failures(static_cast<std::size_t>(count));
    std::vector<char> failed(static_cast<std::size_t>(count), 0);
    auto worker = [&](int start, int stride) {
        for (int k = start; k < count; k += stride) {
            try {
                fn(k);
            } catch (const std::exception& e) {
                failed[static_cast<std::size_t>(k)] = 1;
                failures[static_cast<std::size_t>(k)] = e.what();
            }
        }
    };
    if (threads <= 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
        for (std::thread& t : pool) t.join();
    }
    for (int k = 0; k < count; ++k)
        if (failed[static_cast<std::size_t>(k)])
            throw Error(contexts[static_cast<std::size_t>(k)] + ": "
                        + failures[static_cast<std::size_t>(k)]);
}

}  // namespace detail

/// Execute a sweep.  Deterministic: the table depends only on the spec, not
/// on thread count or completion order (each cell writes its preassigned
/// row slot).  All grid points are validated before any solve; the first
/// failing cell aborts the run with its series label and grid coordinate.
inline ResultTable run_sweep(const SweepSpec& spec, int threads = 1) {
    if (spec.grid.size() < 2) throw ValidationError("sweep grid needs at least 2 points");
    if (spec.series.empty()) throw ValidationError("sweep needs at least one series");
    if (threads < 1) throw ValidationError("thread count must be >= 1");
    const bool time_sweep = spec.parameter == "time";
    if (time_sweep)
        for (std::size_t k = 1; k < spec.grid.size(); ++k)
            if (spec.grid[k] < spec.grid[k - 1])
                throw ValidationError("time grid must be nondecreasing");

    // pre-validate every (series, grid value) before any solve
    {
        std::vector<std::string> violations;
        for (const SeriesSpec& s : spec.series) {
            for (double v : spec.grid) {
                try {
                    detail::apply_parameter(s, spec.parameter, v);
                } catch (const std::exception& e) {
                    violations.push_back("series '" + s.label + "', " + spec.parameter + " = "
                                         + format_full(v) + ": " + e.what());
                    break;  // one message per series is enough
                }
            }
        }
        if (!violations.empty()) {
            std::string msg = "sweep pre-validation failed:";
            for (const std::string& v : violations) msg += "\n  " + v;
            throw ValidationError(msg);
        }
    }

    const int n_series = static_cast<int>(spec.series.size());
    const int n_grid = static_cast<int>(spec.grid.size());
    std::vector<detail::CellResult> cells(static_cast<std::size_t>(n_series * n_grid));

    if (time_sweep) {
        std::vector<std::string> contexts;
        for (const SeriesSpec& s : spec.series)
            contexts.push_back("series '" + s.label + "', time trajectory");
        detail::parallel_for(
            n_series, threads,
            [&](int si) {
                const SeriesSpec& s = spec.series[static_cast<std::size_t>(si)];
                const AuxPreparation prep =
                    s.preparation ? *s.preparation : AuxPreparation::all_ground();
                const DensityState initial = initial_product_state(s.config, prep);
                const auto fwd = evolve(s.config, initial, spec.grid);
                const auto rev = evolve(s.config.swapped_temperatures(), initial, spec.grid);
                const double wle =
                    detail::averaged_left_frequency(s.config, prep.subspace_weights(s.config));
                for (int k = 0; k < n_grid; ++k) {
                    detail::CellResult& r = cells[static_cast<std::size_t>(si * n_grid + k)];
                    const HeatCurrents qf =
                        heat_current_dynamic(s.config, fwd[static_cast<std::size_t>(k)]);
                    const HeatCurrents qr = heat_current_dynamic(
                        s.config.swapped_temperatures(), rev[static_cast<std::size_t>(k)]);
                    r.q_l_forward = qf.left;
                    r.q_r_forward = qf.right;
                    r.q_l_reverse = qr.left;
                    r.rectification = 0.0;  // instantaneous currents carry no steady factor
                    r.omega_l_effective = wle;
                }
            },
            contexts);
    } else {
        std::vector<std::string> contexts;
        contexts.reserve(cells.size());
        for (int si = 0; si < n_series; ++si)
            for (int k = 0; k < n_grid; ++k)
                contexts.push_back("series '" + spec.series[static_cast<std::size_t>(si)].label
                                   + "', " + spec.parameter + " = "
                                   + format_full(spec.grid[static_cast<std::size_t>(k)]));
        detail::parallel_for(
            n_series * n_grid, threads,
            [&](int cell) {
                const int si = cell / n_grid, k = cell % n_grid;
                const SeriesSpec& s = spec.series[static_cast<std::size_t>(si)];
                const auto [c, prep] = detail::apply_parameter(
                    s, spec.parameter, spec.grid[static_cast<std::size_t>(k)]);
                cells[static_cast<std::size_t>(cell)] =
                    detail::steady_cell(c, prep, s.vanishing_aux_dissipation);
            },
            contexts);
    }

    ResultTable t;
    t.columns = sweep_columns();
    t.provenance.push_back(std::string("tool: qtd ") + kToolVersion);
    t.provenance.push_back(spec.preset_id.empty() ? "preset: (document)"
                                                  : "preset: " + spec.preset_id);
    t.provenance.push_back("parameter: " + spec.parameter);
    {
        std::string all;
        for (const SeriesSpec& s : spec.series) all += detail::config_echo(s.config) + ";";
        all += spec.parameter;
        for (double v : spec.grid) all += "," + format_full(v);
        t.provenance.push_back("config hash: " + fnv1a_hex(all));
    }
    for (int si = 0; si < n_series; ++si) {
        const SeriesSpec& s = spec.series[static_cast<std::size_t>(si)];
        t.provenance.push_back("series " + std::to_string(si) + ": " + s.label);
        t.provenance.push_back("series " + std::to_string(si)
                               + " config: " + detail::config_echo(s.config));
    }
    bool any_aux_bath = false;
    for (const SeriesSpec& s : spec.series) any_aux_bath |= s.config.aux_bath.has_value();
    if (any_aux_bath)
        t.provenance.push_back(
            "note: auxiliary transition frequencies are the energy-spectrum differences "
            "omega_1 + 2 g_L1 z_L (grouped by the left atom's state); g_LR cancels in them "
            "exactly");
    for (const std::string& n : spec.notes) t.provenance.push_back("note: " + n);
    for (const std::string& h : spec.plot_hints) t.provenance.push_back(h);

    for (int si = 0; si < n_series; ++si)
        for (int k = 0; k < n_grid; ++k) {
            const detail::CellResult& r = cells[static_cast<std::size_t>(si * n_grid + k)];
            t.append_row({spec.grid[static_cast<std::size_t>(k)], static_cast<double>(si),
                          r.q_l_forward, r.q_l_reverse, r.q_r_forward, r.rectification,
                          r.omega_l_effective});
        }
    return t;
}

namespace detail {

/// Series list "N=0, then N=1..10 at the given preparation" shared by the
/// current/rectification scans.
inline std::vector<SeriesSpec> ladder_series(double wl, double wr, double wa, double glr,
                                             double gla, double gamma, double tl, double tr,
                                             bool excited, bool include_bare,
                                             const std::string& label_prefix = "") {
    std::vector<SeriesSpec> out;
    if (include_bare)
        out.push_back({label_prefix + "N=0",
                       uniform_config(0, wl, wr, wa, glr, gla, gamma, tl, tr),
                       AuxPreparation::all_ground(), false});
    for (int n = 1; n <= 10; ++n)
        out.push_back({label_prefix + "N=" + std::to_string(n) + (excited ? " excited" : " ground"),
                       uniform_config(n, wl, wr, wa, glr, gla, gamma, tl, tr),
                       excited ? AuxPreparation::all_excited() : AuxPreparation::all_ground(),
                       false});
    return out;
}

inline std::string aux_bitmask_label(const DiodeConfig& c, int m) {
    std::string s;
    for (int sign : aux_signs(c, m)) s += sign > 0 ? 'e' : 'g';
    return s;
}

}  // namespace detail

/// Built-in parameter scans reproducing the reference plots.  Grids not fixed
/// by the plot descriptions are pinned here and flagged in the notes.
inline SweepSpec figure_preset(const std::string& id) {
    SweepSpec spec;
    spec.preset_id = id;
    const double gamma = 1e-3;

    auto current_panel = [&](double wl, double wr, bool excited) {
        spec.parameter = "temp_left";
        spec.grid = detail::linspace(0.5, 1.0, 51);
        spec.series = detail::ladder_series(wl, wr, 2.0, 0.1, 0.05, gamma, 1.0, 0.5, excited,
                                            true);
        spec.notes.push_back("assumed: temp_left grid [0.5, 1] x 51 (not fixed by the plot)");
        spec.notes.push_back(
            "rows with temp_left = temp_right carry rectification 0.0 (undefined 0/0 case)");
        spec.plot_hints = {"plot: y=q_l_forward,q_l_reverse", "plot: x_label=T_L",
                           "plot: y_label=Q_L (solid forward, dashed reverse)",
                           "plot: title=steady heat current vs left temperature"};
    };

    if (id == "2a") current_panel(4.0, 4.0, true);
    else if (id == "2b") current_panel(4.0, 4.0, false);
    else if (id == "2c") current_panel(4.0, 2.0, true);
    else if (id == "2d") current_panel(4.0, 2.0, false);
    else if (id == "2e") current_panel(2.0, 4.0, true);
    else if (id == "2f") current_panel(2.0, 4.0, false);
    else if (id == "3") {
        spec.parameter = "time";
        spec.grid = detail::linspace(0.0, 8000.0, 801);
        const DiodeConfig c = uniform_config(1, 5.0, 3.0, 2.0, 1.0, 0.5, gamma, 2.0, 1.0);
        for (double a2 : {0.25, 0.5, 0.75}) {
            SeriesSpec s;
            s.label = "pure |alpha|^2=" + format_full(a2);
            s.config = c;
            s.preparation = AuxPreparation::product_pure({std::sqrt(a2)}, {std::sqrt(1.0 - a2)});
            spec.series.push_back(std::move(s));
        }
        for (double p1 : {0.25, 0.5, 0.75}) {
            SeriesSpec s;
            s.label = "mixture p_1=" + format_full(p1);
            s.config = c;
            s.preparation = AuxPreparation::classical({p1, 1.0 - p1});
            spec.series.push_back(std::move(s));
        }
        spec.notes.push_back("assumed: time grid [0, 8000] x 801 and amplitude set "
                             "|alpha|^2 in {0.25, 0.5, 0.75} (the plot labels them inline)");
        spec.plot_hints = {"plot: y=q_l_forward", "plot: x_label=t", "plot: y_label=Q_L(t)",
                           "plot: title=heat current relaxation from pure vs mixed "
                           "auxiliary preparations"};
    } else if (id == "4") {
        spec.parameter = "temp_left";
        spec.grid = detail::linspace(0.5, 1.0, 51);
        spec.series = detail::ladder_series(4.0, 4.0, 2.0, 0.2, 0.05, gamma, 1.0, 0.5, true,
                                            true);
        const auto ground = detail::ladder_series(4.0, 4.0, 2.0, 0.2, 0.05, gamma, 1.0, 0.5,
                                                  false, false);
        spec.series.insert(spec.series.end(), ground.begin(), ground.end());
        spec.notes.push_back("assumed: temp_left grid [0.5, 1] x 51 (not fixed by the plot)");
        spec.notes.push_back(
            "rows with temp_left = temp_right carry rectification 0.0 (undefined 0/0 case)");
        spec.plot_hints = {"plot: y=rectification", "plot: x_label=T_L", "plot: y_label=R",
                           "plot: title=rectification vs left temperature (equal bare "
                           "frequencies)"};
    } else if (id == "5" || id == "5a" || id == "5b") {
        spec.parameter = "temp_left";
        spec.grid = detail::linspace(0.55, 1.5, 20);
        auto add_panel = [&](double wl, double wr, const std::string& prefix) {
            auto exc = detail::ladder_series(wl, wr, 2.0, 0.1, 0.05, gamma, 1.0, 0.5, true, true,
                                             prefix);
            auto gnd = detail::ladder_series(wl, wr, 2.0, 0.1, 0.05, gamma, 1.0, 0.5, false,
                                             false, prefix);
            spec.series.insert(spec.series.end(), exc.begin(), exc.end());
            spec.series.insert(spec.series.end(), gnd.begin(), gnd.end());
        };
        if (id != "5b") add_panel(4.0, 2.0, id == "5" ? "wL=4,wR=2 " : "");
        if (id != "5a") add_panel(2.0, 4.0, id == "5" ? "wL=2,wR=4 " : "");
        spec.notes.push_back("assumed: temp_left grid [0.55, 1.5] x 20 (not fixed by the plot)");
        spec.notes.push_back(
            "assumed: bare frequencies (omega_left, omega_right) = (4, 2) and (2, 4) for the "
            "two panels (not fixed by the plot)");
        spec.plot_hints = {"plot: y=rectification", "plot: x_label=T_L", "plot: y_label=R",
                           "plot: title=rectification vs left temperature (solid excited, "
                           "dashed ground)"};
    } else if (id == "6") {
        spec.parameter = "omega_right";
        spec.grid = detail::linspace(2.0, 6.0, 101);
        spec.series = detail::ladder_series(4.0, 4.0, 2.0, 0.2, 0.02, gamma, 0.3, 0.5, true,
                                            true);
        const auto ground = detail::ladder_series(4.0, 4.0, 2.0, 0.2, 0.02, gamma, 0.3, 0.5,
                                                  false, false);
        spec.series.insert(spec.series.end(), ground.begin(), ground.end());
        spec.notes.push_back("assumed: omega_right grid [2, 6] x 101 (not fixed by the plot)");
        spec.plot_hints = {"plot: y=rectification", "plot: markers=omega_l_effective",
                           "plot: x_label=omega_R", "plot: y_label=R",
                           "plot: title=rectification vs right frequency (markers at the "
                           "effective left frequency)"};
    } else if (id == "7") {
        spec.parameter = "temp_left";
        spec.grid = detail::linspace(0.6, 1.6, 51);
        const DiodeConfig c = uniform_config(3, 4.0, 2.0, 2.0, 0.1, 0.1, gamma, 1.0, 0.5);
        for (int m = 1; m <= c.n_subspaces(); ++m) {
            SeriesSpec s;
            s.label = "aux |" + detail::aux_bitmask_label(c, m) + ">";
            s.config = c;
            s.preparation = AuxPreparation::definite(m, c.n_subspaces());
            spec.series.push_back(std::move(s));
        }
        spec.notes.push_back("assumed: temp_left grid [0.6, 1.6] x 51 (not fixed by the plot)");
        spec.plot_hints = {"plot: y=rectification", "plot: x_label=T_L", "plot: y_label=R",
                           "plot: title=rectification for the eight definite three-atom "
                           "auxiliary states"};
    } else if (id == "8") {
        spec.parameter = "temp_left";
        spec.grid = detail::linspace(0.6, 1.6, 51);
        const DiodeConfig c = uniform_config(1, 4.0, 1.0, 5.0, 0.1, 0.1, gamma, 1.0, 0.5,
                                             AuxBath{gamma * gamma, 0.8});
        spec.series.push_back({"dissipative auxiliary (gamma_1 = gamma^2)", c, std::nullopt,
                               false});
        spec.series.push_back({"vanishing auxiliary dissipation", c, std::nullopt, true});
        spec.notes.push_back("assumed: temp_left grid [0.6, 1.6] x 51 (not fixed by the plot)");
        spec.plot_hints = {"plot: y=rectification", "plot: x_label=T_L", "plot: y_label=R",
                           "plot: title=rectification with a dissipative auxiliary atom"};
    } else if (id == "p1") {
        spec.parameter = "p_1";
        spec.grid = detail::linspace(0.0, 1.0, 101);
        const DiodeConfig c = uniform_config(1, 4.0, 2.0, 2.0, 0.1, 0.1, gamma, 0.3, 0.5);
        spec.series.push_back({"single auxiliary, mixture p_1", c,
                               AuxPreparation::classical({0.5, 0.5}), false});
        spec.series.push_back({"no-auxiliary baseline",
                               uniform_config(0, 4.0, 2.0, 2.0, 0.1, 0.1, gamma, 0.3, 0.5),
                               AuxPreparation::all_ground(), false});
        spec.notes.push_back(
            "assumed: bare frequencies omega_left = 4, omega_right = 2 (not fixed by the plot)");
        spec.notes.push_back("assumed: p_1 grid [0, 1] x 101");
        spec.notes.push_back("critical fraction p_c = " + format_full(critical_fraction(c)));
        spec.plot_hints = {"plot: y=q_l_forward", "plot: x_label=p_1", "plot: y_label=Q_L",
                           "plot: title=heat current vs excited fraction (crossing = critical "
                           "fraction)"};
    } else {
        throw UnknownFigure("unknown figure id '" + id
                            + "' (known: 2a..2f, 3, 4, 5, 5a, 5b, 6, 7, 8, p1)");
    }
    return spec;
}

}  // namespace qtd
