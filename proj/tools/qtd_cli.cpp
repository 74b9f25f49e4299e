// Command-line front end: steady-state reports, trajectories, parameter
// sweeps, and the built-in figure presets, emitted as CSV, SVG, or plain text.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtd/qtd.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qtd::Error("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& bytes) {
    if (out_path.empty() || out_path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw qtd::Error("cannot write output file '" + out_path + "'");
    out << bytes;
}

std::optional<qtd::AuxPreparation> parse_weights_flag(const std::string& weights) {
    if (weights.empty()) return std::nullopt;
    std::vector<double> w;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        try {
            w.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw qtd::ParseError("--weights: '" + token + "' is not a number");
        }
        token.clear();
    };
    for (char ch : weights) {
        if (ch == ',' || ch == ' ')
            flush();
        else
            token += ch;
    }
    flush();
    return qtd::AuxPreparation::classical(w);
}

/// Steady-state report as a table: per-index populations plus the in-subspace
/// conditional distribution; scalar results ride in the provenance header.
qtd::ResultTable steady_table(const qtd::DiodeConfig& c, const qtd::SteadyReport& report,
                              const std::string& prep_desc) {
    qtd::ResultTable t;
    t.provenance.push_back(std::string("tool: qtd ") + QTD_VERSION);
    t.provenance.push_back("config: " + qtd::detail::config_echo(c));
    t.provenance.push_back("config hash: " + qtd::fnv1a_hex(qtd::detail::config_echo(c)));
    t.provenance.push_back("preparation: " + prep_desc);
    t.provenance.push_back("q_left: " + qtd::format_full(report.q_left));
    t.provenance.push_back("q_right: " + qtd::format_full(report.q_right));
    t.provenance.push_back("q_aux: " + qtd::format_full(report.q_aux));
    t.provenance.push_back("residual: " + qtd::format_full(report.residual));
    if (c.aux_bath)
        t.provenance.push_back(
            "note: auxiliary transition frequencies are the energy-spectrum differences "
            "omega_1 + 2 g_L1 z_L (grouped by the left atom's state); g_LR cancels in them "
            "exactly");
    t.columns = {"index", "population", "subspace", "conditional"};
    const int M = c.n_subspaces();
    for (int i = 1; i <= c.dim(); ++i) {
        const int m = (i - 1) % M + 1;
        const int member = (i - 1) / M;
        t.append_row({static_cast<double>(i), report.populations[i - 1],
                      static_cast<double>(m),
                      report.subspace_populations[static_cast<std::size_t>(m - 1)][member]});
    }
    return t;
}

std::string steady_plain(const qtd::DiodeConfig& c, const qtd::SteadyReport& report,
                         const std::string& prep_desc) {
    std::ostringstream out;
    out << "config: " << qtd::detail::config_echo(c) << "\n";
    out << "preparation: " << prep_desc << "\n";
    out << "Q_L  = " << qtd::format_full(report.q_left) << "\n";
    out << "Q_R  = " << qtd::format_full(report.q_right) << "\n";
    out << "Q_1  = " << qtd::format_full(report.q_aux) << "\n";
    out << "residual = " << qtd::format_full(report.residual) << "\n";
    out << "populations:\n";
    for (int i = 1; i <= c.dim(); ++i)
        out << "  " << i << "  " << qtd::format_full(report.populations[i - 1]) << "\n";
    return out.str();
}

std::string describe_preparation(const std::optional<qtd::AuxPreparation>& prep,
                                 bool defaulted) {
    if (!prep) return "(none: unique steady state)";
    std::string base;
    switch (prep->kind) {
        case qtd::AuxPreparation::Kind::AllExcited: base = "all_excited"; break;
        case qtd::AuxPreparation::Kind::AllGround: base = "all_ground"; break;
        case qtd::AuxPreparation::Kind::ClassicalWeights: {
            base = "classical:";
            for (double w : prep->weights) base += " " + qtd::format_full(w);
            break;
        }
        case qtd::AuxPreparation::Kind::ProductPure: {
            base = "pure:";
            for (const auto& a : prep->alpha) base += " " + qtd::format_full(std::abs(a));
            break;
        }
    }
    if (defaulted) base += " (defaulted)";
    return base;
}

int run(int argc, char** argv) {
    CLI::App app{"quantum thermal diode: steady states, trajectories, and sweeps"};
    app.require_subcommand(1);

    std::string config_path, out_path, format = "csv", weights;
    int threads = 1;

    auto add_io = [&](CLI::App* sub, bool with_threads) {
        sub->add_option("--out", out_path, "output file (default: stdout)");
        sub->add_option("--format", format, "output format: csv | svg | plain");
        if (with_threads)
            sub->add_option("--threads", threads, "worker threads (default 1)")
                ->check(CLI::PositiveNumber);
    };

    CLI::App* steady = app.add_subcommand("steady", "solve one steady state");
    steady->add_option("config", config_path, "run document")->required();
    steady->add_option("--weights", weights,
                       "override preparation with classical weights w1,w2,...");
    add_io(steady, false);

    CLI::App* evolve = app.add_subcommand("evolve", "integrate a trajectory (time sweep)");
    evolve->add_option("config", config_path, "sweep document with parameter = time")
        ->required();
    add_io(evolve, true);

    CLI::App* sweep = app.add_subcommand("sweep", "run a sweep document");
    sweep->add_option("config", config_path, "sweep document")->required();
    add_io(sweep, true);

    std::string figure_id;
    CLI::App* figure = app.add_subcommand("figure", "run a built-in preset");
    figure->add_option("id", figure_id, "preset id (2a..2f, 3, 4, 5, 5a, 5b, 6, 7, 8, p1)")
        ->required();
    add_io(figure, true);

    CLI11_PARSE(app, argc, argv);

    if (steady->parsed()) {
        qtd::RunDocument doc = qtd::parse_run_document(read_input(config_path));
        std::optional<qtd::AuxPreparation> prep = parse_weights_flag(weights);
        if (!prep) prep = doc.preparation;
        const qtd::SteadyReport report = qtd::steady_numeric(doc.config, prep);
        const std::string desc = describe_preparation(
            prep ? prep : (report.weights_defaulted
                               ? std::optional<qtd::AuxPreparation>(
                                     qtd::AuxPreparation::all_ground())
                               : std::nullopt),
            report.weights_defaulted);
        if (format == "plain") {
            write_output(out_path, steady_plain(doc.config, report, desc));
        } else if (format == "csv") {
            write_output(out_path, qtd::emit(steady_table(doc.config, report, desc), "csv"));
        } else {
            throw qtd::UnsupportedFormat("steady supports formats csv and plain, not '"
                                         + format + "'");
        }
        return 0;
    }

    qtd::SweepSpec spec;
    if (figure->parsed()) {
        spec = qtd::figure_preset(figure_id);
    } else {
        spec = qtd::parse_run_config(read_input(config_path));
        if (evolve->parsed() && spec.parameter != "time")
            throw qtd::ValidationError("evolve needs a [sweep] section with parameter = time");
    }
    const qtd::ResultTable table = qtd::run_sweep(spec, threads);
    if (format != "csv" && format != "svg")
        throw qtd::UnsupportedFormat("sweep output supports csv and svg, not '" + format + "'");
    write_output(out_path, qtd::emit(table, format));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const qtd::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
