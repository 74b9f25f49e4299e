#pragma once

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtd/config.hpp"
#include "qtd/errors.hpp"
#include "qtd/steady.hpp"
#include "qtd/sweep.hpp"
#include "qtd/table.hpp"

namespace qtd {

/// A parsed single-run document: the device and (optionally) how the
/// auxiliary atoms are prepared.
struct RunDocument {
    DiodeConfig config;
    std::optional<AuxPreparation> preparation;
};

namespace detail {

struct DocValue {
    std::string text;
    int line = 0;
    bool used = false;
};

using DocSection = std::map<std::string, DocValue>;

/// Tokenize a flat key = value document with [section] headers.  Comments
/// start at '#' or ';'.  Throws ParseError with the offending line number.
inline std::map<std::string, DocSection> parse_document_lines(const std::string& text) {
    std::map<std::string, DocSection> doc;
    doc[""];  // top level always present
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("line " + std::to_string(line_no)
                                 + ": unterminated section header '" + line + "'");
            section = strip(line.substr(1, line.size() - 2));
            if (section != "aux_bath" && section != "sweep")
                throw ParseError("line " + std::to_string(line_no) + ": unknown section ["
                                 + section + "] (expected [aux_bath] or [sweep])");
            doc[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected key = value, got '"
                             + line + "'");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty key");
        if (doc[section].count(key))
            throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key
                             + "' (first on line " + std::to_string(doc[section][key].line)
                             + ")");
        doc[section][key] = {value, line_no, false};
    }
    return doc;
}

/// Numbers separated by commas and/or whitespace.
inline std::vector<double> parse_number_list(const std::string& text, const std::string& where,
                                             std::vector<std::string>& violations) {
    std::vector<double> out;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        const char* begin = token.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0')
            violations.push_back(where + ": '" + token + "' is not a number");
        else
            out.push_back(v);
        token.clear();
    };
    for (char ch : text) {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch)))
            flush();
        else
            token += ch;
    }
    flush();
    return out;
}

inline std::optional<double> parse_scalar(DocSection& sec, const std::string& key,
                                          const std::string& where,
                                          std::vector<std::string>& violations) {
    auto it = sec.find(key);
    if (it == sec.end()) return std::nullopt;
    it->second.used = true;
    std::vector<std::string> local;
    const std::vector<double> v = parse_number_list(it->second.text, where + key, local);
    if (!local.empty() || v.size() != 1) {
        violations.push_back(where + key + " (line " + std::to_string(it->second.line)
                             + "): expected one number, got '" + it->second.text + "'");
        return std::nullopt;
    }
    return v[0];
}

inline std::optional<int> parse_integer(DocSection& sec, const std::string& key,
                                        const std::string& where,
                                        std::vector<std::string>& violations) {
    const std::optional<double> v = parse_scalar(sec, key, where, violations);
    if (!v) return std::nullopt;
    if (*v != std::floor(*v)) {
        violations.push_back(where + key + ": expected an integer, got " + format_full(*v));
        return std::nullopt;
    }
    return static_cast<int>(*v);
}

/// preparation = all_excited | all_ground | classical: w1 w2 ... | pure: a1 a2 ...
/// (pure lists one real amplitude per auxiliary atom; the ground amplitude is
/// sqrt(1 - a^2)).
inline std::optional<AuxPreparation> parse_preparation(const std::string& text, int line,
                                                       const DiodeConfig& config,
                                                       std::vector<std::string>& violations) {
    const std::string where = "preparation (line " + std::to_string(line) + "): ";
    if (text == "all_excited") return AuxPreparation::all_excited();
    if (text == "all_ground") return AuxPreparation::all_ground();
    const std::size_t colon = text.find(':');
    const std::string head = colon == std::string::npos ? text : strip(text.substr(0, colon));
    const std::string rest = colon == std::string::npos ? "" : strip(text.substr(colon + 1));
    std::vector<std::string> local;
    if (head == "classical") {
        const std::vector<double> w = parse_number_list(rest, "preparation weights", local);
        if (!local.empty()) {
            violations.insert(violations.end(), local.begin(), local.end());
            return std::nullopt;
        }
        if (static_cast<int>(w.size()) != config.n_subspaces()) {
            violations.push_back(where + "classical needs " + std::to_string(config.n_subspaces())
                                 + " weights (one per auxiliary configuration), got "
                                 + std::to_string(w.size()));
            return std::nullopt;
        }
        try {
            AuxPreparation p = AuxPreparation::classical(w);
            p.subspace_weights(config);  // validate normalization now, with context
            return p;
        } catch (const Error& e) {
            violations.push_back(where + e.what());
            return std::nullopt;
        }
    }
    if (head == "pure") {
        const std::vector<double> a = parse_number_list(rest, "preparation amplitudes", local);
        if (!local.empty()) {
            violations.insert(violations.end(), local.begin(), local.end());
            return std::nullopt;
        }
        if (static_cast<int>(a.size()) != config.n_aux) {
            violations.push_back(where + "pure needs " + std::to_string(config.n_aux)
                                 + " amplitudes (one per auxiliary atom), got "
                                 + std::to_string(a.size()));
            return std::nullopt;
        }
        std::vector<std::complex<double>> alpha, beta;
        bool ok = true;
        for (double amp : a) {
            if (std::abs(amp) > 1.0) {
                violations.push_back(where + "amplitude " + format_full(amp)
                                     + " has magnitude > 1");
                ok = false;
                continue;
            }
            alpha.emplace_back(amp, 0.0);
            beta.emplace_back(std::sqrt(1.0 - amp * amp), 0.0);
        }
        if (!ok) return std::nullopt;
        return AuxPreparation::product_pure(std::move(alpha), std::move(beta));
    }
    violations.push_back(where + "unknown form '" + text
                         + "' (expected all_excited, all_ground, classical: ..., or pure: ...)");
    return std::nullopt;
}

inline void report_unused(const std::map<std::string, DocSection>& doc,
                          std::vector<std::string>& violations) {
    for (const auto& [section, keys] : doc)
        for (const auto& [key, val] : keys)
            if (!val.used)
                violations.push_back("unknown key '" + (section.empty() ? key : section + "." + key)
                                     + "' on line " + std::to_string(val.line));
}

/// Assemble the DiodeConfig from the top-level and [aux_bath] keys, recording
/// every violation instead of stopping at the first.
inline std::optional<DiodeConfig> build_config(std::map<std::string, DocSection>& doc,
                                               std::vector<std::string>& violations) {
    DocSection& top = doc[""];
    DiodeConfig c;
    bool complete = true;
    auto need = [&](const char* key, double& slot) {
        const std::optional<double> v = parse_scalar(top, key, "", violations);
        if (v)
            slot = *v;
        else if (!top.count(key)) {
            violations.push_back(std::string("missing required field '") + key + "'");
            complete = false;
        } else {
            complete = false;
        }
    };
    const std::optional<int> n_aux = parse_integer(top, "n_aux", "", violations);
    if (!n_aux) {
        if (!top.count("n_aux")) violations.push_back("missing required field 'n_aux'");
        complete = false;
    } else {
        c.n_aux = *n_aux;
    }
    need("omega_left", c.omega_left);
    need("omega_right", c.omega_right);
    need("g_lr", c.g_lr);
    need("gamma", c.gamma);
    need("temp_left", c.temp_left);
    need("temp_right", c.temp_right);
    auto list = [&](const char* key, std::vector<double>& slot) {
        auto it = top.find(key);
        if (it == top.end()) {
            if (n_aux && *n_aux > 0) {
                violations.push_back(std::string("missing required field '") + key
                                     + "' (n_aux > 0)");
                complete = false;
            }
            return;
        }
        it->second.used = true;
        slot = parse_number_list(it->second.text,
                                 std::string(key) + " (line " + std::to_string(it->second.line)
                                     + ")",
                                 violations);
    };
    list("omega_aux", c.omega_aux);
    list("g_la", c.g_la);
    if (doc.count("aux_bath")) {
        DocSection& ab = doc["aux_bath"];
        AuxBath bath;
        const std::optional<double> g = parse_scalar(ab, "gamma_aux", "aux_bath.", violations);
        const std::optional<double> t = parse_scalar(ab, "temp_aux", "aux_bath.", violations);
        if (!ab.count("gamma_aux"))
            violations.push_back("missing required field 'aux_bath.gamma_aux'");
        if (!ab.count("temp_aux"))
            violations.push_back("missing required field 'aux_bath.temp_aux'");
        if (g && t) {
            bath.gamma_aux = *g;
            bath.temp_aux = *t;
            c.aux_bath = bath;
        } else {
            complete = false;
        }
    }
    if (!complete) return std::nullopt;
    try {
        return validate_config(std::move(c));
    } catch (const Error& e) {
        violations.push_back(e.what());
        return std::nullopt;
    }
}

inline std::optional<AuxPreparation> take_preparation(DocSection& sec,
                                                      const std::optional<DiodeConfig>& config,
                                                      std::vector<std::string>& violations) {
    auto it = sec.find("preparation");
    if (it == sec.end()) return std::nullopt;
    it->second.used = true;
    if (!config) return std::nullopt;  // config violations already recorded
    return parse_preparation(it->second.text, it->second.line, *config, violations);
}

[[noreturn]] inline void throw_violations(const std::vector<std::string>& violations) {
    std::string msg = "invalid run document:";
    for (const std::string& v : violations) msg += "\n  " + v;
    throw ValidationError(msg);
}

}  // namespace detail

/// Parse a single-run document (no [sweep] section required; one is ignored
/// if present).  Collects every violation into one ValidationError.
inline RunDocument parse_run_document(const std::string& text) {
    auto doc = detail::parse_document_lines(text);
    std::vector<std::string> violations;
    std::optional<DiodeConfig> config = detail::build_config(doc, violations);
    std::optional<AuxPreparation> prep =
        detail::take_preparation(doc[""], config, violations);
    if (doc.count("sweep"))
        for (auto& [key, val] : doc["sweep"]) val.used = true;  // ignored here
    detail::report_unused(doc, violations);
    if (!violations.empty()) detail::throw_violations(violations);
    return {std::move(*config), std::move(prep)};
}

/// Parse a sweep document into an executable SweepSpec.  Requires a [sweep]
/// section with `parameter` and either `values = v1, v2, ...` or
/// `min`/`max`/`count`.  Every grid point is pre-validated against the config.
inline SweepSpec parse_run_config(const std::string& text) {
    auto doc = detail::parse_document_lines(text);
    std::vector<std::string> violations;
    std::optional<DiodeConfig> config = detail::build_config(doc, violations);
    std::optional<AuxPreparation> prep =
        detail::take_preparation(doc[""], config, violations);

    SweepSpec spec;
    if (!doc.count("sweep")) {
        violations.push_back("missing [sweep] section");
        detail::throw_violations(violations);
    }
    detail::DocSection& sw = doc["sweep"];

    if (auto it = sw.find("parameter"); it != sw.end()) {
        it->second.used = true;
        spec.parameter = it->second.text;
        static const char* known[] = {"temp_left", "omega_right", "p_1", "n_aux", "time"};
        bool ok = false;
        for (const char* k : known) ok |= spec.parameter == k;
        if (!ok)
            violations.push_back(
                "sweep.parameter '" + spec.parameter
                + "' unknown (expected temp_left, omega_right, p_1, n_aux, or time)");
    } else {
        violations.push_back("missing required field 'sweep.parameter'");
    }

    const bool has_values = sw.count("values") != 0;
    const bool has_range = sw.count("min") || sw.count("max") || sw.count("count");
    if (has_values && has_range) {
        violations.push_back("sweep: give either 'values' or 'min'/'max'/'count', not both");
        if (auto it = sw.find("values"); it != sw.end()) it->second.used = true;
        detail::parse_scalar(sw, "min", "sweep.", violations);
        detail::parse_scalar(sw, "max", "sweep.", violations);
        detail::parse_integer(sw, "count", "sweep.", violations);
    } else if (has_values) {
        auto it = sw.find("values");
        it->second.used = true;
        spec.grid = detail::parse_number_list(it->second.text, "sweep.values", violations);
        if (spec.grid.size() < 2) violations.push_back("sweep.values needs at least 2 entries");
    } else if (has_range) {
        const std::optional<double> lo = detail::parse_scalar(sw, "min", "sweep.", violations);
        const std::optional<double> hi = detail::parse_scalar(sw, "max", "sweep.", violations);
        const std::optional<int> n = detail::parse_integer(sw, "count", "sweep.", violations);
        for (const char* key : {"min", "max", "count"})
            if (!sw.count(key))
                violations.push_back(std::string("missing required field 'sweep.") + key + "'");
        if (lo && hi && n) {
            if (*n < 2)
                violations.push_back("sweep.count must be >= 2, got " + std::to_string(*n));
            else
                spec.grid = detail::linspace(*lo, *hi, *n);
        }
    } else {
        violations.push_back("sweep: needs 'values' or 'min'/'max'/'count'");
    }

    // sweep-section preparation overrides a top-level one
    if (sw.count("preparation")) {
        std::optional<AuxPreparation> p = detail::take_preparation(sw, config, violations);
        if (p) prep = std::move(p);
    }
    if (auto it = sw.find("outputs"); it != sw.end()) {
        it->second.used = true;
        std::string token;
        auto check = [&] {
            if (!token.empty() && token != "currents" && token != "rectification"
                && token != "subspaces")
                violations.push_back("sweep.outputs: unknown output '" + token
                                     + "' (expected currents, rectification, subspaces)");
            token.clear();
        };
        for (char ch : it->second.text) {
            if (ch == ',' || std::isspace(static_cast<unsigned char>(ch)))
                check();
            else
                token += ch;
        }
        check();
        spec.notes.push_back("outputs requested: " + it->second.text
                             + " (the table always carries the full column set)");
    }

    detail::report_unused(doc, violations);

    if (config && !violations.empty()) {
        // fall through: structural problems already fatal
    }
    if (config && violations.empty()) {
        if (spec.parameter == "p_1" && (config->n_aux != 1 || config->aux_bath))
            violations.push_back(
                "p_1 sweeps require exactly one auxiliary atom and no auxiliary reservoir");
        if (config->aux_bath && prep)
            violations.push_back(
                "a preparation cannot be combined with [aux_bath] (the steady state is unique)");
        if (spec.parameter == "time")
            for (std::size_t k = 1; k < spec.grid.size(); ++k)
                if (spec.grid[k] < spec.grid[k - 1]) {
                    violations.push_back("sweep grid for 'time' must be nondecreasing");
                    break;
                }
    }
    if (config && violations.empty()) {
        SeriesSpec series{"document", *config, prep, false};
        for (double v : spec.grid) {
            try {
                detail::apply_parameter(series, spec.parameter, v);
            } catch (const std::exception& e) {
                violations.push_back(spec.parameter + " = " + format_full(v) + ": " + e.what());
                break;
            }
        }
        spec.series.push_back(std::move(series));
    }
    if (!violations.empty()) detail::throw_violations(violations);
    spec.plot_hints = {"plot: y=q_l_forward,q_l_reverse", "plot: x_label=" + spec.parameter,
                       "plot: y_label=Q_L"};
    return spec;
}

}  // namespace qtd
