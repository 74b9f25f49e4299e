#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "qtd/run_config.hpp"
#include "qtd/sweep.hpp"

using namespace qtd;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
SweepSpec small_spec() {
    SweepSpec spec;
    spec.parameter = "temp_left";
    spec.grid = {0.7, 0.9, 1.1};
    const DiodeConfig base = uniform_config(1, 4.0, 2.0, 2.0, 0.1, 0.05, 1e-3, 1.0, 0.5);
    spec.series.push_back({"excited", base, AuxPreparation::all_excited(), false});
    spec.series.push_back({"ground", base, AuxPreparation::all_ground(), false});
    return spec;
}

int column_index(const ResultTable& t, const std::string& name) {
    for (std::size_t k = 0; k < t.columns.size(); ++k)
        if (t.columns[k] == name) return static_cast<int>(k);
    return -1;
}
}  // namespace

TEST_CASE("run_sweep emits the fixed schema in series-major order") {
    const ResultTable t = run_sweep(small_spec());
    REQUIRE(t.columns == sweep_columns());
    REQUIRE(t.rows.size() == 6);
    const int sv = column_index(t, "sweep_value");
    const int sid = column_index(t, "series_id");
    REQUIRE(t.rows[0][sv] == 0.7);
    REQUIRE(t.rows[2][sv] == 1.1);
    REQUIRE(t.rows[0][sid] == 0.0);
    REQUIRE(t.rows[3][sid] == 1.0);
    // forward current matches a direct steady solve at the applied temperature
    DiodeConfig c = uniform_config(1, 4.0, 2.0, 2.0, 0.1, 0.05, 1e-3, 0.9, 0.5);
    const SteadyReport direct = steady_numeric(c, AuxPreparation::all_excited());
    REQUIRE_THAT(t.rows[1][column_index(t, "q_l_forward")],
                 WithinRel(direct.q_left, 1e-12));
    // effective frequency column reflects the preparation
    REQUIRE_THAT(t.rows[0][column_index(t, "omega_l_effective")], WithinRel(4.1, 1e-12));
    REQUIRE_THAT(t.rows[3][column_index(t, "omega_l_effective")], WithinRel(3.9, 1e-12));
}

TEST_CASE("run_sweep is deterministic and thread-count independent") {
    const ResultTable serial = run_sweep(small_spec(), 1);
    const ResultTable again = run_sweep(small_spec(), 1);
    const ResultTable parallel = run_sweep(small_spec(), 4);
    REQUIRE(serial == again);
    REQUIRE(serial == parallel);
    REQUIRE(emit_csv(serial) == emit_csv(parallel));
}

TEST_CASE("run_sweep validates its spec up front") {
    SweepSpec spec = small_spec();
    spec.grid = {0.7};
    REQUIRE_THROWS_AS(run_sweep(spec), ValidationError);
    spec = small_spec();
    spec.series.clear();
    REQUIRE_THROWS_AS(run_sweep(spec), ValidationError);
    spec = small_spec();
    spec.grid = {0.7, -0.1};  // invalid temperature at the second point
    try {
        run_sweep(spec);
        FAIL("expected a throw");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        REQUIRE(msg.find("series 'excited'") != std::string::npos);
        REQUIRE(msg.find("temp_left = -0.1") != std::string::npos);
    }
}

TEST_CASE("equilibrium grid point carries zero current and zero factor") {
    SweepSpec spec = small_spec();
    spec.grid = {0.5, 0.8};  // first point equals temp_right
    const ResultTable t = run_sweep(spec);
    const int qlf = column_index(t, "q_l_forward");
    const int rect = column_index(t, "rectification");
    REQUIRE(std::abs(t.rows[0][qlf]) <= 1e-14 * 1e-3);
    REQUIRE(t.rows[0][rect] == 0.0);
    REQUIRE(t.rows[1][rect] > 0.0);
}

TEST_CASE("n_aux sweeps rebuild uniform devices") {
    SweepSpec spec;
    spec.parameter = "n_aux";
    spec.grid = {0.0, 1.0, 2.0, 3.0};
    const DiodeConfig base = uniform_config(1, 4.0, 2.0, 2.0, 0.1, 0.05, 1e-3, 1.0, 0.5);
    spec.series.push_back({"excited ladder", base, AuxPreparation::all_excited(), false});
    const ResultTable t = run_sweep(spec);
    const int qlf = column_index(t, "q_l_forward");
    const int wle = column_index(t, "omega_l_effective");
    REQUIRE(t.rows.size() == 4);
    for (int k = 0; k < 4; ++k)
        REQUIRE_THAT(t.rows[static_cast<std::size_t>(k)][wle], WithinRel(4.0 + 0.1 * k, 1e-12));
    // all-excited auxiliaries widen the detuning: current falls with N
    REQUIRE(t.rows[1][qlf] < t.rows[0][qlf]);
    REQUIRE(t.rows[2][qlf] < t.rows[1][qlf]);
    REQUIRE(t.rows[3][qlf] < t.rows[2][qlf]);
}

TEST_CASE("p_1 sweeps rewrite the single-auxiliary preparation") {
    const SweepSpec spec = figure_preset("p1");
    const ResultTable t = run_sweep(spec, 2);
    const int qlf = column_index(t, "q_l_forward");
    const int sid = column_index(t, "series_id");
    const int sv = column_index(t, "sweep_value");
    // device series: current at p_1 = 0 equals the all-ground value, at 1 all-excited
    const DiodeConfig c = spec.series[0].config;
    REQUIRE_THAT(t.rows[0][qlf], WithinAbs(mixed_current(c, 0.0), 1e-14));
    REQUIRE_THAT(t.rows[100][qlf], WithinAbs(mixed_current(c, 1.0), 1e-14));
    // baseline series is constant across the grid
    const std::size_t b0 = 101, b1 = 151, b2 = 201;
    REQUIRE(t.rows[b0][sid] == 1.0);
    REQUIRE(t.rows[b0][qlf] == t.rows[b1][qlf]);
    REQUIRE(t.rows[b1][qlf] == t.rows[b2][qlf]);
    // the two series cross at the critical fraction
    const double pc = critical_fraction(c);
    int crossing = -1;
    for (int k = 0; k + 1 < 101; ++k) {
        const double d0 = t.rows[static_cast<std::size_t>(k)][qlf] - t.rows[b0][qlf];
        const double d1 = t.rows[static_cast<std::size_t>(k + 1)][qlf] - t.rows[b0][qlf];
        if (d0 == 0.0 || (d0 < 0) != (d1 < 0)) crossing = k;
    }
    REQUIRE(crossing >= 0);
    REQUIRE(std::abs(t.rows[static_cast<std::size_t>(crossing)][sv] - pc) < 0.02);
}

TEST_CASE("figure presets carry the advertised parameters") {
    const SweepSpec f2a = figure_preset("2a");
    REQUIRE(f2a.parameter == "temp_left");
    REQUIRE(f2a.series.size() == 11);  // bare junction + N = 1..10
    REQUIRE(f2a.series[0].config.n_aux == 0);
    REQUIRE(f2a.series[10].config.n_aux == 10);
    REQUIRE(f2a.series[1].config.omega_left == 4.0);
    REQUIRE(f2a.series[1].config.omega_right == 4.0);
    REQUIRE(f2a.series[1].config.g_lr == 0.1);
    REQUIRE(f2a.series[1].config.g_la[0] == 0.05);
    REQUIRE(f2a.series[1].config.temp_right == 0.5);
    REQUIRE(f2a.series[1].preparation->kind == AuxPreparation::Kind::AllExcited);

    const SweepSpec f6 = figure_preset("6");
    REQUIRE(f6.parameter == "omega_right");
    REQUIRE(f6.series[1].config.g_lr == 0.2);
    REQUIRE(f6.series[1].config.g_la[0] == 0.02);
    REQUIRE(f6.series[1].config.temp_left == 0.3);
    REQUIRE(f6.series.size() == 21);

    const SweepSpec f8 = figure_preset("8");
    REQUIRE(f8.series.size() == 2);
    REQUIRE(f8.series[0].config.aux_bath.has_value());
    REQUIRE_THAT(f8.series[0].config.aux_bath->gamma_aux, WithinRel(1e-6, 1e-12));
    REQUIRE(f8.series[0].config.aux_bath->temp_aux == 0.8);
    REQUIRE(f8.series[1].vanishing_aux_dissipation);

    const SweepSpec f3 = figure_preset("3");
    REQUIRE(f3.parameter == "time");
    REQUIRE(f3.series.size() == 6);
    REQUIRE(f3.series[0].config.g_lr == 1.0);
    REQUIRE(f3.series[0].config.g_la[0] == 0.5);

    const SweepSpec f7 = figure_preset("7");
    REQUIRE(f7.series.size() == 8);
    REQUIRE(f7.series[0].config.n_aux == 3);

    REQUIRE_THROWS_AS(figure_preset("9z"), UnknownFigure);
}

TEST_CASE("preset tables cite their identity in the provenance header") {
    SweepSpec spec = figure_preset("2c");
    spec.grid = {0.8, 1.0};  // trim for speed, keep the series set
    const ResultTable t = run_sweep(spec, 4);
    bool preset_line = false, hash_line = false, series_line = false;
    for (const std::string& p : t.provenance) {
        preset_line |= p.rfind("preset: 2c", 0) == 0;
        hash_line |= p.rfind("config hash: ", 0) == 0;
        series_line |= p.rfind("series 3: ", 0) == 0;
    }
    REQUIRE(preset_line);
    REQUIRE(hash_line);
    REQUIRE(series_line);
    // forward current decreases with N at T_L = 1 for excited auxiliaries
    const int qlf = column_index(t, "q_l_forward");
    std::vector<double> at_tl1;
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        if (t.rows[r][0] == 1.0 && t.rows[r][1] >= 1.0) at_tl1.push_back(t.rows[r][qlf]);
    REQUIRE(at_tl1.size() == 10);
    for (std::size_t k = 0; k + 1 < at_tl1.size(); ++k)
        REQUIRE(at_tl1[k] > at_tl1[k + 1]);
}

TEST_CASE("sweep documents parse into runnable specs") {
    const std::string doc = R"(# relaxation benchmark
n_aux = 1
omega_left = 5
omega_right = 3
omega_aux = 2
g_lr = 1
g_la = 0.5
gamma = 1e-3
temp_left = 2
temp_right = 1

[sweep]
parameter = time
min = 0
max = 400
count = 5
preparation = pure: 0.70710678118654752
)";
    const SweepSpec spec = parse_run_config(doc);
    REQUIRE(spec.parameter == "time");
    REQUIRE(spec.grid.size() == 5);
    REQUIRE(spec.grid[4] == 400.0);
    REQUIRE(spec.series.size() == 1);
    REQUIRE(spec.series[0].preparation->kind == AuxPreparation::Kind::ProductPure);
    const ResultTable t = run_sweep(spec);
    REQUIRE(t.rows.size() == 5);
    const int rect = column_index(t, "rectification");
    for (const auto& row : t.rows) REQUIRE(row[rect] == 0.0);
}

TEST_CASE("document validation lists every missing field") {
    try {
        parse_run_config("n_aux = 0\nomega_left = 4\n[sweep]\nparameter = temp_left\n");
        FAIL("expected a throw");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        REQUIRE(msg.find("omega_right") != std::string::npos);
        REQUIRE(msg.find("temp_right") != std::string::npos);
        REQUIRE(msg.find("gamma") != std::string::npos);
        REQUIRE(msg.find("sweep") != std::string::npos);  // missing grid
    }
}

TEST_CASE("document grids are pre-validated at every point") {
    const std::string doc = R"(
n_aux = 1
omega_left = 1.0
omega_right = 2
omega_aux = 2
g_lr = 0.1
g_la = 0.05
gamma = 1e-3
temp_left = 1
temp_right = 0.5

[sweep]
parameter = n_aux
values = 0, 2, 10
)";
    // at n_aux = 10 the shifted left frequency 1 - 0.2 - 10*0.1 turns negative
    try {
        parse_run_config(doc);
        FAIL("expected a throw");
    } catch (const ValidationError& e) {
        REQUIRE(std::string(e.what()).find("n_aux = 10") != std::string::npos);
    }
}

TEST_CASE("document parse errors carry line numbers") {
    REQUIRE_THROWS_AS(parse_run_document("n_aux\n"), ParseError);
    REQUIRE_THROWS_AS(parse_run_document("[mystery]\nx = 1\n"), ParseError);
    try {
        parse_run_document("n_aux = 1\nn_aux = 2\n");
        FAIL("expected a throw");
    } catch (const ParseError& e) {
        REQUIRE(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("single-run documents carry config and preparation") {
    const std::string doc = R"(
n_aux = 1
omega_left = 4
omega_right = 1
omega_aux = 5
g_lr = 0.1
g_la = 0.1
gamma = 1e-3
temp_left = 1
temp_right = 0.5
[aux_bath]
gamma_aux = 1e-6
temp_aux = 0.8
)";
    const RunDocument run = parse_run_document(doc);
    REQUIRE(run.config.aux_bath.has_value());
    REQUIRE(run.config.aux_bath->temp_aux == 0.8);
    REQUIRE_FALSE(run.preparation.has_value());

    const RunDocument with_prep = parse_run_document(
        "n_aux = 1\nomega_left = 4\nomega_right = 2\nomega_aux = 2\ng_lr = 0.1\n"
        "g_la = 0.05\ngamma = 1e-3\ntemp_left = 1\ntemp_right = 0.5\n"
        "preparation = classical: 0.3 0.7\n");
    REQUIRE(with_prep.preparation->kind == AuxPreparation::Kind::ClassicalWeights);
    REQUIRE_THAT(with_prep.preparation->weights[0], WithinRel(0.3, 1e-14));

    // unknown keys are called out
    REQUIRE_THROWS_AS(
        parse_run_document("n_aux = 0\nomega_left = 4\nomega_right = 2\ng_lr = 0.1\n"
                           "gamma = 1e-3\ntemp_left = 1\ntemp_right = 0.5\nbogus = 3\n"),
        ValidationError);
}

TEST_CASE("time sweeps fill trajectory rows for forward and reverse runs") {
    SweepSpec spec;
    spec.parameter = "time";
    spec.grid = {0.0, 200.0, 400.0};
    const DiodeConfig c = uniform_config(1, 5.0, 3.0, 2.0, 1.0, 0.5, 1e-3, 2.0, 1.0);
    spec.series.push_back({"pure", c, AuxPreparation::product_pure({std::sqrt(0.5)},
                                                                   {std::sqrt(0.5)}),
                           false});
    const ResultTable t = run_sweep(spec, 2);
    REQUIRE(t.rows.size() == 3);
    const int qlf = column_index(t, "q_l_forward");
    const int qlr = column_index(t, "q_l_reverse");
    const int rect = column_index(t, "rectification");
    // instantaneous rows carry no steady rectification factor
    for (const auto& row : t.rows) REQUIRE(row[rect] == 0.0);
    // the reverse trajectory runs under swapped temperatures: different currents
    REQUIRE(t.rows[1][qlf] != t.rows[1][qlr]);
    REQUIRE(t.rows[1][qlf] != 0.0);
}
