// Command-line front end: compute time-frequency distributions, classify
// symplectic matrices, evaluate modulation / amalgam / mixed norms, and run
// the verification suite.  All outputs are plain files (CSV, PGM, JSON) and
// are byte-reproducible for a fixed config and seed.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "symtf/verify.hpp"

namespace fs = std::filesystem;
using namespace symtf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct CliError {
    int code;
    std::string message;
};

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ValidationError(where + ": expected a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ValidationError(where + ": unknown key '" + it.key() + "'");
}

Grid1D grid_from_config(const json& cfg) {
    int n = 256;
    double dx = 1.0 / 16.0;
    if (cfg.contains("grid")) {
        check_keys(cfg.at("grid"), {"n", "dx"}, "grid");
        n = cfg.at("grid").value("n", 256);
        dx = cfg.at("grid").value("dx", 1.0 / 16.0);
    }
    return Grid1D(n, dx);
}

Signal signal_from_spec(const json& spec, const Grid1D& g) {
    check_keys(spec, {"kind", "width", "rate", "k", "x0", "xi0", "path"}, "signal");
    std::string kind = spec.value("kind", "gaussian");
    if (kind == "gaussian") return make_gaussian(g, spec.value("width", 1.0));
    if (kind == "chirped_gaussian")
        return make_chirped_gaussian(g, spec.value("rate", 0.0), spec.value("width", 1.0));
    if (kind == "hermite") return make_hermite(g, spec.value("k", 0));
    if (kind == "tf_shifted_gaussian")
        return make_shifted_gaussian(g, spec.value("x0", 0.0), spec.value("xi0", 0.0));
    if (kind == "csv") {
        std::ifstream is(spec.at("path").get<std::string>());
        if (!is) throw ValidationError("signal csv: cannot open " + spec.at("path").get<std::string>());
        return read_signal_csv(is, g);
    }
    throw UnknownDescriptor("signal kind '" + kind + "'");
}

Weight1D weight1d_from_spec(const json& spec) {
    check_keys(spec, {"kind", "s"}, "weight1d");
    std::string kind = spec.value("kind", "one");
    if (kind == "one") return weight1d_one();
    if (kind == "vs") return weight1d_vs(spec.value("s", 0.0));
    throw ValidationError("weight1d kind '" + kind + "'");
}

Weight weight_from_spec(const json& spec) {
    check_keys(spec, {"kind", "s", "first", "second", "base", "M"}, "weight");
    std::string kind = spec.value("kind", "one");
    if (kind == "one") return weight_one();
    if (kind == "vs") return weight_vs(spec.value("s", 0.0));
    if (kind == "separable")
        return weight_separable(weight1d_from_spec(spec.at("first")), weight1d_from_spec(spec.at("second")));
    if (kind == "composed")
        return weight_compose(weight_from_spec(spec.at("base")), mat_from_json(spec.at("M")));
    throw ValidationError("weight kind '" + kind + "'");
}

ChirpAtomSpec chirp_spec_from_config(const json& d) {
    return ChirpAtomSpec::scalar(d.value("C11", 0.0), d.value("C12", 1.0), d.value("C22", 0.0));
}

struct ResolvedDistribution {
    SympMat matrix;
    Field2D field;
    std::string name;
};

ResolvedDistribution resolve_distribution(const json& d, const Signal& f, const Signal& g) {
    check_keys(d, {"name", "tau", "matrix", "C11", "C12", "C22", "A_prime"}, "distribution");
    std::string name = d.value("name", "stft");
    if (name == "stft") return {make_AST(1), stft(f, g), name};
    if (name == "rihacek") return {make_Atau(0.0, 1), rihacek(f, g), name};
    if (name == "conj_rihacek") return {make_Atau(1.0, 1), conj_rihacek(f, g), name};
    if (name == "tau_wigner") {
        double tau = d.value("tau", 0.5);
        return {make_Atau(tau, 1), tau_wigner(f, g, tau), name};
    }
    if (name == "metaplectic") {
        SympMat A = parse_matrix_spec(d.at("matrix"));
        if (A.half_dim != 2) throw ValidationError("metaplectic distribution needs a 4x4 matrix");
        return {A, metaplectic_wigner(A, f, g), name};
    }
    if (name == "gen_stft") {
        ChirpAtomSpec spec = chirp_spec_from_config(d);
        return {gen_stft_matrix(spec, 1), generalized_stft(f, g, spec), name};
    }
    if (name == "gen_tau") {
        ChirpAtomSpec spec = chirp_spec_from_config(d);
        double tau = d.value("tau", 0.5);
        return {gen_tau_matrix(tau, spec, 1), generalized_tau_wigner(f, g, tau, spec), name};
    }
    if (name == "mod_window_stft") {
        SympMat ap = parse_matrix_spec(d.at("A_prime"));
        return {mod_window_matrix(ap), modified_window_stft(f, g, ap), name};
    }
    if (name == "mod_signal_stft") {
        SympMat ap = parse_matrix_spec(d.at("A_prime"));
        return {mod_signal_matrix(ap), modified_signal_stft(f, g, ap), name};
    }
    throw UnknownDescriptor("distribution '" + name + "'");
}

void ensure_out_dir(const std::string& out) {
    if (out.empty()) throw ValidationError("analyze requires an output directory (--out)");
    fs::create_directories(out);
}

int cmd_analyze(const json& cfg, const std::string& out) {
    check_keys(cfg, {"grid", "seed", "distribution", "signals", "out"}, "analyze config");
    Grid1D g = grid_from_config(cfg);
    if (!cfg.contains("signals")) throw ValidationError("analyze: missing 'signals'");
    check_keys(cfg.at("signals"), {"f", "g"}, "signals");
    Signal f = signal_from_spec(cfg.at("signals").at("f"), g);
    Signal w = signal_from_spec(cfg.at("signals").at("g"), g);
    if (!cfg.contains("distribution")) throw ValidationError("analyze: missing 'distribution'");
    ResolvedDistribution dist = resolve_distribution(cfg.at("distribution"), f, w);

    ensure_out_dir(out);
    {
        std::ofstream os(fs::path(out) / "field.csv", std::ios::binary);
        write_field_csv(os, dist.field);
    }
    {
        std::ofstream os(fs::path(out) / "field.pgm", std::ios::binary);
        write_pgm(os, dist.field);
    }
    auto [E, F] = ea_fa(dist.matrix);
    json meta{{"schema_version", kSchemaVersion},
              {"command", "analyze"},
              {"distribution", dist.name},
              {"grid", {{"n", g.n}, {"dx", g.dx}}},
              {"matrix", sympmat_to_json(dist.matrix)},
              {"E_A", mat_to_json(E)},
              {"F_A", mat_to_json(F)},
              {"class_report", class_report_to_json(classify(dist.matrix))}};
    write_text_file((fs::path(out) / "meta.json").string(), meta.dump(2) + "\n");
    std::cout << "analyze: wrote field.csv, field.pgm, meta.json to " << out << "\n";
    return kExitOk;
}

int cmd_classify(const json& cfg, const std::string& out) {
    check_keys(cfg, {"grid", "seed", "matrix", "out"}, "classify config");
    if (!cfg.contains("matrix")) throw ValidationError("classify: missing 'matrix'");
    const json& mj = cfg.at("matrix");
    // Report the symplectic residual explicitly for rejected inputs.
    if (mj.contains("entries")) {
        Mat m = mat_from_json(mj.at("entries"));
        if (!m.square() || m.rows % 2 != 0 || symplectic_residual(m) > 1e-9) {
            double res = (m.square() && m.rows % 2 == 0) ? symplectic_residual(m) : -1.0;
            std::cerr << "classify: input is not symplectic; residual ||A^T J A - J||_max = "
                      << res << "\n";
            return kExitValidation;
        }
    }
    SympMat A = parse_matrix_spec(mj);
    json rep = class_report_to_json(classify(A));
    rep["schema_version"] = kSchemaVersion;
    std::cout << rep.dump(2) << "\n";
    if (!out.empty()) {
        fs::create_directories(out);
        write_text_file((fs::path(out) / "classify.json").string(), rep.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_norm(const json& cfg, const std::string& out) {
    check_keys(cfg,
               {"grid", "seed", "kind", "p", "q", "weight", "weight1", "weight2", "signal", "window",
                "matrix", "inner_axis", "out"},
               "norm config");
    Grid1D g = grid_from_config(cfg);
    Signal f = signal_from_spec(cfg.value("signal", json{{"kind", "gaussian"}}), g);
    Signal w = signal_from_spec(cfg.value("window", json{{"kind", "gaussian"}}), g);
    double p = cfg.value("p", 2.0), q = cfg.value("q", 2.0);
    std::string kind = cfg.value("kind", "modulation");

    double value;
    if (kind == "modulation") {
        Weight m = cfg.contains("weight") ? weight_from_spec(cfg.at("weight")) : weight_one();
        value = modulation_norm(f, p, q, m, w);
    } else if (kind == "amalgam") {
        Weight1D m1 = cfg.contains("weight1") ? weight1d_from_spec(cfg.at("weight1")) : weight1d_one();
        Weight1D m2 = cfg.contains("weight2") ? weight1d_from_spec(cfg.at("weight2")) : weight1d_one();
        value = amalgam_norm(f, p, q, m1, m2, w);
    } else if (kind == "mixed") {
        SympMat A = cfg.contains("matrix") ? parse_matrix_spec(cfg.at("matrix")) : make_AST(1);
        Weight m = cfg.contains("weight") ? weight_from_spec(cfg.at("weight")) : weight_one();
        auto axis = cfg.value("inner_axis", "first") == std::string("second")
                        ? MixedNormSpec::InnerAxis::second
                        : MixedNormSpec::InnerAxis::first;
        value = mixed_norm(metaplectic_wigner(A, f, w), {p, q, m, axis});
    } else {
        throw ValidationError("norm kind '" + kind + "'");
    }

    json meta{{"schema_version", kSchemaVersion}, {"command", "norm"}, {"kind", kind},
              {"p", p},       {"q", q},           {"value", value}};
    std::cout << meta.dump(2) << "\n";
    if (!out.empty()) {
        fs::create_directories(out);
        write_text_file((fs::path(out) / "norm.json").string(), meta.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_verify(const json& cfg, const std::string& out, const std::string& experiments_arg) {
    check_keys(cfg, {"grid", "seed", "experiments", "out"}, "verify config");
    Grid1D g = grid_from_config(cfg);
    uint64_t seed = cfg.value("seed", 1u);

    std::vector<std::string> wanted;
    std::string list = experiments_arg;
    if (list.empty() && cfg.contains("experiments"))
        for (const auto& e : cfg.at("experiments")) wanted.push_back(e.get<std::string>());
    else if (!list.empty() && list != "all") {
        size_t pos = 0;
        while (pos != std::string::npos) {
            size_t next = list.find(',', pos);
            wanted.push_back(list.substr(pos, next == std::string::npos ? next : next - pos));
            pos = next == std::string::npos ? next : next + 1;
        }
    }

    auto entries = default_suite(g, seed);
    if (!wanted.empty()) {
        std::vector<SuiteEntry> filtered;
        for (const std::string& name : wanted) {
            auto it = std::find_if(entries.begin(), entries.end(),
                                   [&](const SuiteEntry& e) { return e.name == name; });
            if (it == entries.end()) throw ValidationError("unknown experiment '" + name + "'");
            filtered.push_back(*it);
        }
        entries = std::move(filtered);
    }

    SuiteOutcome outcome = run_suite(entries);

    std::string csv = "name,verdict,expected,ok\n";
    for (const auto& row : outcome.rows) {
        std::cout << (row.ok ? "[ OK ] " : "[FAIL] ") << row.result.name << ": "
                  << verdict_name(row.result.verdict);
        if (row.expected != Verdict::pass) std::cout << " (expected " << verdict_name(row.expected) << ")";
        std::cout << "\n";
        csv += row.result.name;
        csv += ',';
        csv += verdict_name(row.result.verdict);
        csv += ',';
        csv += verdict_name(row.expected);
        csv += ',';
        csv += row.ok ? "1" : "0";
        csv += '\n';
        if (!out.empty()) {
            fs::create_directories(fs::path(out) / "experiments");
            write_text_file((fs::path(out) / "experiments" / (row.result.name + ".json")).string(),
                            experiment_to_json(row.result).dump(2) + "\n");
        }
    }
    if (!out.empty()) {
        fs::create_directories(out);
        write_text_file((fs::path(out) / "verify_summary.csv").string(), csv);
    }
    std::cout << (outcome.all_ok ? "verify: all experiments behaved as expected\n"
                                 : "verify: FAILURES present\n");
    return outcome.all_ok ? kExitOk : kExitVerifyFailure;
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open config " + path);
    json cfg;
    try {
        is >> cfg;
    } catch (const std::exception& e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symtf: metaplectic time-frequency distributions, norms, and verification"};
    app.require_subcommand(1);

    std::string config_path, out_dir, experiments;
    long long seed = -1;
    int grid_n = 0;
    double grid_dx = 0.0;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "RNG seed override");
    app.add_option("--grid-n", grid_n, "grid size override (power of two)");
    app.add_option("--grid-dx", grid_dx, "grid spacing override");
    app.add_option("--experiments", experiments, "comma-separated experiment names (verify)");

    auto* analyze = app.add_subcommand("analyze", "compute a distribution; write CSV/PGM/JSON");
    auto* classify_cmd = app.add_subcommand("classify", "classify a symplectic matrix");
    auto* norm = app.add_subcommand("norm", "compute a modulation/amalgam/mixed norm");
    auto* verify = app.add_subcommand("verify", "run verification experiments");
    for (auto* sub : {analyze, classify_cmd, norm, verify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }

    try {
        json cfg = load_config(config_path);
        if (seed >= 0) cfg["seed"] = static_cast<uint64_t>(seed);
        if (grid_n > 0) cfg["grid"]["n"] = grid_n;
        if (grid_dx > 0.0) cfg["grid"]["dx"] = grid_dx;
        if (!out_dir.empty()) cfg["out"] = out_dir;
        std::string out = cfg.value("out", "");

        if (analyze->parsed()) return cmd_analyze(cfg, out);
        if (classify_cmd->parsed()) return cmd_classify(cfg, out);
        if (norm->parsed()) return cmd_norm(cfg, out);
        if (verify->parsed()) return cmd_verify(cfg, out, experiments);
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const UnknownDescriptor& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const BadShape& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const GridMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const GridNotSelfDual& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NotSymmetric& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NotSymplectic& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const SingularL& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const SingularM& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const SingularC12& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ZeroWindow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const DegeneratePair& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
